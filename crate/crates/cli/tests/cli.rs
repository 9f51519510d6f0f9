//! End-to-end tests of the `oscibif` binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oscibif"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

const HEADER: &str = "alpha,p,b,mu_exact,gradsq_exact,lambda_exact,mu_asym,gradsq_asym,lambda_asym,rel_err_mu,rel_err_lambda,regime,flags";

#[test]
fn sweep_emits_header_and_rows() {
    let (stdout, _, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "1", "--alpha-max", "10", "--points", "4",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim_end().lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 5);
    // 17 significant digits: mantissa with 16 decimals plus exponent.
    assert!(lines[1].starts_with("1.0000000000000000e0,3.0000000000000000e0,"));
}

#[test]
fn degenerate_range_is_a_config_error() {
    let (_, stderr, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "2", "--alpha-max", "2", "--points", "4",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("alpha-max"));
}

#[test]
fn invalid_parameters_are_config_errors() {
    let (_, _, code) = run(&["sweep", "--p", "0.5", "--alpha-min", "1", "--alpha-max", "2"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "1", "--alpha-max", "2", "--points", "1",
    ]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "1", "--alpha-max", "2", "--truncation", "zero",
    ]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&[
        "verify", "--p", "3", "--alpha-min", "1", "--alpha-max", "2", "--tol", "2.0",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn lambda_equals_mu_without_kirchhoff_term() {
    let (stdout, _, code) = run(&[
        "sweep", "--p", "3", "--b", "0", "--alpha-min", "0.5", "--alpha-max", "8",
        "--points", "4", "--mode", "exact",
    ]);
    assert_eq!(code, 0);
    for line in stdout.trim_end().lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[3], cols[5], "mu_exact vs lambda_exact in {line}");
        // asymptotic cells are empty in exact mode
        assert_eq!(cols[6], "");
        assert_eq!(cols[9], "");
    }
}

#[test]
fn both_mode_reports_small_relative_errors() {
    let (stdout, _, code) = run(&[
        "sweep", "--p", "3", "--b", "0", "--alpha-min", "100", "--alpha-max", "1000",
        "--points", "10",
    ]);
    assert_eq!(code, 0);
    let last = stdout.trim_end().lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    let rel_mu: f64 = cols[9].parse().unwrap();
    let rel_lambda: f64 = cols[10].parse().unwrap();
    assert!(rel_mu < 1e-3, "rel_err_mu = {rel_mu}");
    assert!(rel_lambda < 1e-3, "rel_err_lambda = {rel_lambda}");
    assert_eq!(cols[11], "large");
}

#[test]
fn asym_mode_leaves_exact_cells_empty_and_flags_extrapolation() {
    let (stdout, _, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "2", "--alpha-max", "50", "--points", "3",
        "--mode", "asym",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim_end().lines().collect();
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[3], "");
    assert!(!first[6].is_empty());
    assert_eq!(first[12], "extrapolated"); // alpha = 2 < 10 in the large family
    let last: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(last[12], ""); // alpha = 50 is comfortably asymptotic
}

#[test]
fn json_output_carries_metadata_and_rows() {
    let (stdout, _, code) = run(&[
        "sweep", "--p", "2.5", "--b", "1", "--alpha-min", "0.1", "--alpha-max", "10",
        "--points", "5", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["metadata"]["config"]["p"], 2.5);
    assert_eq!(doc["metadata"]["config"]["points"], 5);
    assert!(doc["metadata"]["version"].as_str().unwrap().contains('.'));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["regime"], "small");
    assert!(rows[0]["mu_exact"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "sweep", "--p", "3", "--b", "0.5", "--alpha-min", "0.5", "--alpha-max", "200",
        "--points", "8",
    ];
    let a = bin().args(args).env("OSCIBIF_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("OSCIBIF_THREADS", "4").output().unwrap();
    let c = bin().args(args).env("OSCIBIF_THREADS", "4").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let (_, _, code) = run(&[
        "sweep", "--p", "3", "--alpha-min", "1", "--alpha-max", "5", "--points", "3",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with(HEADER));
    assert_eq!(body.trim_end().lines().count(), 4);
}

#[test]
fn verify_passes_and_reports() {
    let (stdout, _, code) = run(&[
        "verify", "--p", "3", "--alpha-min", "1", "--alpha-max", "25", "--points", "3",
    ]);
    assert_eq!(code, 0, "verify failed:\n{stdout}");
    assert!(stdout.contains("RESULT: PASS"));
    assert!(stdout.contains("shooting_end_residual"));

    let (stdout, _, code) = run(&[
        "verify", "--p", "1.5", "--alpha-min", "0.1", "--alpha-max", "2", "--points", "3",
        "--format", "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(doc["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("p > 2")));
}
