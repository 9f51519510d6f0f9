//! Shared output helpers.

/// Render a float with 17 significant digits, stable across runs and
/// platforms (always scientific, lowercase `e`).
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Optional cell: empty string for missing values.
pub fn cell(x: Option<f64>) -> String {
    x.map(sig17).unwrap_or_default()
}
