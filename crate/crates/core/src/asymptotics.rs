//! Asymptotic expansions of the bifurcation curves for α → ∞ and α → 0,
//! with full bookkeeping of every bracket term.
//!
//! Large amplitude: writing F(α) − F(αs) = (α^{p+1}q/(p+1))(1 + x) with
//! q = 1 − s^{p+1} and x = x1 − xa − xb (see `timemap::radicand_parts`), the
//! binomial expansion of (1 + x)^{∓1/2} turns the time-map integrals into a
//! power series in α^{1−p}, α^{−p}, α^{−(p+1)}, α^{2(1−p)} whose coefficients
//! are Beta values plus oscillatory integrals (bounded, α-dependent).
//!
//! Small amplitude: u sin²u ≈ u³ dominates (or competes with u^p), and the
//! curves expand around the quartic-potential limit with constants built from
//! B(1/4, ·) and elementary corrections.
//!
//! The engine caches all α-independent constants and the Chebyshev table of
//! the nested second-order kernel, so per-α evaluation costs a handful of
//! one-dimensional quadratures.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::model::{self, ProblemParams};
use crate::quad::{self, InnerAntiderivative, Node, QuadSpec};
use crate::timemap;

/// Which end of the curve an expansion targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// α → ∞ family.
    Large,
    /// α → 0 family.
    Small,
}

/// How many bracket terms to keep (after ordering by decay).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Full,
    Terms(usize),
}

/// One term of an expansion bracket: `coefficient · α^order_exponent`.
#[derive(Debug, Clone)]
pub struct ExpansionTerm {
    pub label: String,
    /// The α-free coefficient (oscillatory coefficients are still bounded
    /// functions of α; they are evaluated at the requested α).
    pub coefficient: f64,
    pub order_exponent: f64,
    /// Whether the coefficient involves a bounded oscillatory integral.
    pub oscillatory: bool,
}

impl ExpansionTerm {
    fn new(label: &str, coefficient: f64, order_exponent: f64, oscillatory: bool) -> Self {
        Self { label: label.to_string(), coefficient, order_exponent, oscillatory }
    }

    /// Value contributed to the bracket at the stored α.
    pub fn evaluate(&self, alpha: f64) -> f64 {
        self.coefficient * alpha.powf(self.order_exponent)
    }
}

/// A fully assembled asymptotic value:
/// `value = factor · prefactor · (Σ terms)^bracket_power`.
#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub alpha: f64,
    pub value: f64,
    pub prefactor: f64,
    pub bracket_terms: Vec<ExpansionTerm>,
    /// 2 for the squared time-map bracket (μ, λ), 1 for ‖v′‖₂².
    pub bracket_power: i32,
    /// Multiplicative factor outside the bracket (the Kirchhoff factor
    /// b‖v′‖₂² + 1 for λ; 1 otherwise).
    pub factor: f64,
    /// Exponent of the smallest retained bracket order; the bracket remainder
    /// is o(α^remainder_exponent) in the regime's limit.
    pub remainder_exponent: f64,
    pub regime: Regime,
    /// Set when the expansion is evaluated outside its comfort zone
    /// (large-α family below α = 10, small-α family above α = 0.5).
    pub extrapolated: bool,
}

impl ExpansionResult {
    /// Σ coefficientᵢ·α^{eᵢ} over the retained terms.
    pub fn bracket_sum(&self) -> f64 {
        self.bracket_terms.iter().map(|t| t.evaluate(self.alpha)).sum()
    }

    /// Recompute `value` from the stored pieces (bit-identical to `value`).
    pub fn assemble(&self) -> f64 {
        self.factor * self.prefactor * self.bracket_sum().powi(self.bracket_power)
    }
}

/// α-independent expansion constants for a fixed p.
///
/// `c*`/`l*`/`h*` feed the time-map bracket (μ, λ); `e*` feed the energy
/// integral (‖v′‖₂²). Constants subscripted `_3` are the p = 3 quartic-limit
/// values used by every small-amplitude family with p ≥ 3.
#[derive(Debug, Clone)]
pub struct StaticConsts {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub e0: f64,
    /// (p+1)/8·∫(1−s²)/√q — partners x1 in the energy bracket.
    pub e1_large: f64,
    /// (p+1)/8·∫(1−s⁴)/√q — quartic analogue used at small amplitude.
    pub e1_small: f64,
    pub e4: f64,
    pub e5: f64,
    pub c0_3: f64,
    pub e0_3: f64,
    pub h2: f64,
    pub h3: f64,
    pub l1: f64,
    pub l2: f64,
}

/// Bounded oscillatory coefficients at a given α (they enter the brackets
/// multiplied by fixed powers of α).
#[derive(Debug, Clone, Copy)]
pub struct OscConstants {
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
    /// Second-order nested coefficient (cross term of x1 with the first
    /// oscillatory block).
    pub c3: f64,
    pub e2: f64,
    pub e3: f64,
}

const P_CLASS_TOL: f64 = 1e-9;
const MAX_PHASE_BREAKS: usize = 200_000;

fn classify(p: f64, pivot: f64) -> std::cmp::Ordering {
    if (p - pivot).abs() < P_CLASS_TOL {
        std::cmp::Ordering::Equal
    } else if p < pivot {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Engine evaluating all expansion families for one parameter set.
pub struct AsymptoticEngine {
    params: ProblemParams,
    statics: OnceLock<Result<StaticConsts>>,
    inner_table: OnceLock<Result<InnerAntiderivative>>,
}

/// ∫₀¹ kernel(s, 1−s) ds with the given endpoint behaviour and tight tolerance.
fn static_integral(
    kernel: impl FnMut(f64, f64) -> f64,
    right_exponent: f64,
) -> Result<f64> {
    let mut kernel = kernel;
    let spec = QuadSpec::unit()
        .with_right_exponent(right_exponent)
        .with_tol(1e-15, 1e-13);
    Ok(quad::integrate(|n: Node| kernel(n.x, n.from_right), &spec)?.value)
}

fn compute_statics(params: &ProblemParams) -> Result<StaticConsts> {
    let p = params.p();
    let m = p + 1.0;
    let q_of = |s: f64, oms: f64| model::one_minus_pow(s, oms, m);

    let c0 = quad::beta_value(1.0 / m, 0.5)? / m;
    let e0 = quad::beta_value(1.0 / m, 1.5)? / m;
    let c0_3 = quad::beta_value(0.25, 0.5)? / 4.0;
    let e0_3 = quad::beta_value(0.25, 1.5)? / 4.0;

    let c1 = -(m / 8.0)
        * static_integral(|s, oms| model::one_minus_pow(s, oms, 2.0) / q_of(s, oms).powf(1.5), -0.5)?;
    let c2 = (3.0 * m * m / 128.0)
        * static_integral(
            |s, oms| {
                let d = model::one_minus_pow(s, oms, 2.0);
                d * d / q_of(s, oms).powf(2.5)
            },
            -0.5,
        )?;
    let e1_large = (m / 8.0)
        * static_integral(|s, oms| model::one_minus_pow(s, oms, 2.0) / q_of(s, oms).sqrt(), 0.0)?;
    let e1_small = (m / 8.0)
        * static_integral(|s, oms| model::one_minus_pow(s, oms, 4.0) / q_of(s, oms).sqrt(), 0.0)?;
    let e4 = -(m * m / 128.0)
        * static_integral(
            |s, oms| {
                let d = model::one_minus_pow(s, oms, 2.0);
                d * d / q_of(s, oms).powf(1.5)
            },
            0.0,
        )?;
    let e5 = (2.0 / m)
        * static_integral(
            |s, oms| q_of(s, oms) / model::one_minus_pow(s, oms, 4.0).sqrt(),
            0.0,
        )?;
    let h2 = -(2.0 / m)
        * static_integral(
            |s, oms| q_of(s, oms) / model::one_minus_pow(s, oms, 4.0).powf(1.5),
            -0.5,
        )?;
    let h3 = (1.0 / 9.0)
        * static_integral(
            |s, oms| {
                model::one_minus_pow(s, oms, 6.0) / model::one_minus_pow(s, oms, 4.0).powf(1.5)
            },
            -0.5,
        )?;
    let l1 = -(m / 8.0)
        * static_integral(|s, oms| model::one_minus_pow(s, oms, 4.0) / q_of(s, oms).powf(1.5), -0.5)?;
    let l2 = (m / 36.0)
        * static_integral(|s, oms| model::one_minus_pow(s, oms, 6.0) / q_of(s, oms).powf(1.5), -0.5)?;

    Ok(StaticConsts {
        c0,
        c1,
        c2,
        e0,
        e1_large,
        e1_small,
        e4,
        e5,
        c0_3,
        e0_3,
        h2,
        h3,
        l1,
        l2,
    })
}

impl AsymptoticEngine {
    pub fn new(params: ProblemParams) -> Self {
        Self { params, statics: OnceLock::new(), inner_table: OnceLock::new() }
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    /// The cached α-independent constants.
    pub fn statics(&self) -> Result<&StaticConsts> {
        self.statics
            .get_or_init(|| compute_statics(&self.params))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn inner_table(&self) -> Result<&InnerAntiderivative> {
        self.inner_table
            .get_or_init(|| {
                let m = self.params.p() + 1.0;
                let inner = move |y: f64, omy: f64| {
                    let q = model::one_minus_pow(y, omy, m);
                    model::one_minus_pow(y, omy, 2.0) / q.powf(2.5)
                };
                InnerAntiderivative::build(&inner, 64, 1e-15, 1e-13).map(|(t, _)| t)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Angles θ ∈ (0, π/2) where the phase 2α·sin^{2/(p+1)}θ crosses a
    /// multiple of π; used as panel breaks for the oscillatory θ-integrals.
    fn phase_breaks(&self, alpha: f64) -> Result<Vec<f64>> {
        let m = self.params.p() + 1.0;
        let k_max = (2.0 * alpha / std::f64::consts::PI).floor();
        if k_max as usize > MAX_PHASE_BREAKS {
            return Err(Error::Domain(format!(
                "alpha = {alpha} needs more than {MAX_PHASE_BREAKS} oscillation panels"
            )));
        }
        let mut breaks = Vec::new();
        let mut k = 1.0;
        while k <= k_max {
            let t = (k * std::f64::consts::PI / (2.0 * alpha)).powf(0.5 * m);
            if t < 1.0 {
                breaks.push(t.asin());
            }
            k += 1.0;
        }
        Ok(breaks)
    }

    /// One oscillatory θ-integral over [0, π/2] with weight sin^w θ.
    ///
    /// `trig` receives (φ-related stable pieces): the phase defect
    /// δ = 2α(1 − sin^{2/(p+1)}θ) and sinθ, 1 − sinθ.
    fn theta_integral(
        &self,
        alpha: f64,
        weight_exponent: f64,
        trig: impl Fn(f64, f64, f64) -> f64,
    ) -> Result<f64> {
        let m = self.params.p() + 1.0;
        let breaks = self.phase_breaks(alpha)?;
        let spec = QuadSpec::new(0.0, std::f64::consts::FRAC_PI_2)
            .with_left_exponent(weight_exponent)
            .with_tol(1e-14, 1e-12);
        let result = quad::integrate_panels(
            |n: Node| {
                let theta = n.from_left;
                let half_d = 0.5 * n.from_right; // (π/2 − θ)/2
                let one_minus_sin = 2.0 * half_d.sin().powi(2);
                let sin_theta = (theta.sin()).min(1.0);
                let delta = 2.0 * alpha * model::one_minus_pow(sin_theta, one_minus_sin, 2.0 / m);
                trig(delta, sin_theta, one_minus_sin) * sin_theta.powf(weight_exponent)
            },
            &spec,
            &breaks,
        )?;
        Ok(result.value)
    }

    /// The bounded oscillatory coefficients at α.
    pub fn osc_constants(&self, alpha: f64) -> Result<OscConstants> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        let p = self.params.p();
        let m = p + 1.0;
        let two_alpha = 2.0 * alpha;
        let w1 = (3.0 - p) / m;
        let w2 = (1.0 - p) / m;

        // φ = 2α·sin^{2/(p+1)}θ = 2α − δ; differences via product formulas.
        let j_cos_w1 = self.theta_integral(alpha, w1, |delta, _, _| (two_alpha - delta).cos())?;
        let j_sin_w1 = self.theta_integral(alpha, w1, |delta, _, _| (two_alpha - delta).sin())?;
        let j_dsin_w2 = self.theta_integral(alpha, w2, |delta, _, _| {
            2.0 * (two_alpha - 0.5 * delta).cos() * (0.5 * delta).sin()
        })?;
        let j_dcos_w2 = self.theta_integral(alpha, w2, |delta, _, _| {
            -2.0 * (two_alpha - 0.5 * delta).sin() * (0.5 * delta).sin()
        })?;
        // sin2α − sin^{2/(p+1)}θ·sinφ = (sin2α − sinφ) + (δ/2α)·sinφ
        let j_e2_w2 = self.theta_integral(alpha, w2, |delta, _, _| {
            let phi = two_alpha - delta;
            2.0 * (two_alpha - 0.5 * delta).cos() * (0.5 * delta).sin()
                + (delta / two_alpha) * phi.sin()
        })?;

        // Companion s-integral of the first-order phase correction.
        let spec = QuadSpec::unit()
            .with_right_exponent(-0.5)
            .with_frequency(two_alpha)
            .with_tol(1e-14, 1e-12);
        let j_s = quad::integrate(
            |n: Node| {
                let q = model::one_minus_pow(n.x, n.from_right, m);
                n.from_right / q.powf(1.5) * (two_alpha * n.x).sin()
            },
            &spec,
        )?
        .value;

        // Nested second-order kernel against cos(2αs).
        let table = self.inner_table()?;
        let nested = quad::integrate_outer(
            table,
            &|s: f64| (two_alpha * s).cos(),
            two_alpha,
            1e-13,
            1e-11,
        )?
        .value;

        Ok(OscConstants {
            c11: 2.0 / m * j_cos_w1,
            c12: (p - 1.0) / (2.0 * m) * j_dsin_w2 + m / 4.0 * j_s,
            c21: -j_sin_w1 / m,
            c22: (p - 1.0) / (4.0 * m) * j_dcos_w2,
            c3: -(3.0 / 32.0) * m * m * nested,
            e2: -0.25 * j_e2_w2,
            e3: -0.125 * j_dcos_w2,
        })
    }

    /// Five-term coefficient ladder of the time-map bracket, p > 2 family:
    /// exponents 0, 1−p, −p, −(p+1), 2(1−p).
    fn c_ladder(&self, st: &StaticConsts, osc: &OscConstants) -> [(String, f64, f64, bool); 5] {
        let p = self.params.p();
        [
            ("C0".into(), st.c0, 0.0, false),
            ("C1+C11/2".into(), st.c1 + 0.5 * osc.c11, 1.0 - p, true),
            ("(C12+C21)/2".into(), 0.5 * (osc.c12 + osc.c21), -p, true),
            ("C22/2".into(), 0.5 * osc.c22, -(p + 1.0), true),
            ("C2+C3".into(), st.c2 + osc.c3, 2.0 * (1.0 - p), true),
        ]
    }

    /// Matching ladder for the energy integral.
    fn e_ladder(&self, st: &StaticConsts, osc: &OscConstants) -> [(String, f64, f64, bool); 5] {
        let p = self.params.p();
        [
            ("E0".into(), st.e0, 0.0, false),
            ("E1".into(), st.e1_large, 1.0 - p, false),
            ("E2".into(), osc.e2, -p, true),
            ("E3".into(), osc.e3, -(p + 1.0), true),
            ("E4".into(), st.e4, 2.0 * (1.0 - p), false),
        ]
    }

    fn finish(
        &self,
        alpha: f64,
        prefactor: f64,
        mut terms: Vec<ExpansionTerm>,
        bracket_power: i32,
        factor: f64,
        regime: Regime,
        truncation: Truncation,
    ) -> ExpansionResult {
        terms.sort_by(|a, b| b.order_exponent.partial_cmp(&a.order_exponent).unwrap());
        if let Truncation::Terms(n) = truncation {
            terms.truncate(n.max(1));
        }
        let remainder_exponent = terms.last().map(|t| t.order_exponent).unwrap_or(0.0);
        let extrapolated = match regime {
            Regime::Large => alpha < 10.0,
            Regime::Small => alpha > 0.5,
        };
        let mut result = ExpansionResult {
            alpha,
            value: 0.0,
            prefactor,
            bracket_terms: terms,
            bracket_power,
            factor,
            remainder_exponent,
            regime,
            extrapolated,
        };
        result.value = result.assemble();
        result
    }

    /// μ(α) for α → ∞.
    pub fn mu_large(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let p = self.params.p();
        let st = self.statics()?;
        let osc = self.osc_constants(alpha)?;
        let ladder = self.c_ladder(st, &osc);
        let terms: Vec<ExpansionTerm> = match classify(p, 2.0) {
            std::cmp::Ordering::Greater => ladder
                .iter()
                .map(|(l, c, e, o)| ExpansionTerm::new(l, *c, *e, *o))
                .collect(),
            std::cmp::Ordering::Equal => vec![
                ExpansionTerm::new("C0", st.c0, 0.0, false),
                ExpansionTerm::new("C1+C11/2", st.c1 + 0.5 * osc.c11, -1.0, true),
                ExpansionTerm::new(
                    "(C12+C21)/2+C2+C3",
                    0.5 * (osc.c12 + osc.c21) + st.c2 + osc.c3,
                    -2.0,
                    true,
                ),
            ],
            std::cmp::Ordering::Less => vec![
                ExpansionTerm::new("C0", st.c0, 0.0, false),
                ExpansionTerm::new("C1+C11/2", st.c1 + 0.5 * osc.c11, 1.0 - p, true),
                ExpansionTerm::new("C2+C3", st.c2 + osc.c3, 2.0 * (1.0 - p), true),
            ],
        };
        let prefactor = 2.0 * (p + 1.0) * alpha.powf(1.0 - p);
        Ok(self.finish(alpha, prefactor, terms, 2, 1.0, Regime::Large, truncation))
    }

    /// ‖v_α′‖₂² for α → ∞.
    pub fn gradsq_large(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let p = self.params.p();
        let st = self.statics()?;
        let osc = self.osc_constants(alpha)?;
        let c = self.c_ladder(st, &osc);
        let e = self.e_ladder(st, &osc);
        // Gk are the products of the two ladders collected per total order.
        let g0 = c[0].1 * e[0].1;
        let g1 = c[0].1 * e[1].1 + c[1].1 * e[0].1;
        let g2 = c[2].1 * e[0].1 + c[0].1 * e[2].1;
        let g3 = c[3].1 * e[0].1 + c[0].1 * e[3].1;
        let g4 = c[4].1 * e[0].1 + c[0].1 * e[4].1 + c[1].1 * e[1].1;
        let terms: Vec<ExpansionTerm> = match classify(p, 2.0) {
            std::cmp::Ordering::Greater => vec![
                ExpansionTerm::new("G0", g0, 0.0, false),
                ExpansionTerm::new("G1", g1, 1.0 - p, true),
                ExpansionTerm::new("G2", g2, -p, true),
                ExpansionTerm::new("G3", g3, -(p + 1.0), true),
                ExpansionTerm::new("G4", g4, 2.0 * (1.0 - p), true),
            ],
            std::cmp::Ordering::Equal => vec![
                ExpansionTerm::new("G0", g0, 0.0, false),
                ExpansionTerm::new("G1", g1, -1.0, true),
                ExpansionTerm::new("G2+G4", g2 + g4, -2.0, true),
            ],
            std::cmp::Ordering::Less => vec![
                ExpansionTerm::new("G0", g0, 0.0, false),
                ExpansionTerm::new("G1", g1, 1.0 - p, true),
                ExpansionTerm::new("G4", g4, 2.0 * (1.0 - p), true),
                ExpansionTerm::new("G2", g2, -p, true),
            ],
        };
        let prefactor = 4.0 * alpha * alpha;
        Ok(self.finish(alpha, prefactor, terms, 1, 1.0, Regime::Large, truncation))
    }

    /// λ(α) for α → ∞: the μ expansion times the Kirchhoff factor
    /// b‖v′‖₂² + 1 with ‖v′‖₂² from its own expansion.
    pub fn lambda_large(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let mu = self.mu_large(alpha, truncation)?;
        let grad = self.gradsq_large(alpha, truncation)?;
        let factor = self.params.b() * grad.value + 1.0;
        let mut result = mu;
        result.factor = factor;
        result.value = result.assemble();
        Ok(result)
    }

    /// μ(α) for α → 0.
    pub fn mu_small(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let p = self.params.p();
        let st = self.statics()?;
        let (prefactor, terms) = match classify(p, 3.0) {
            std::cmp::Ordering::Less => (
                2.0 * (p + 1.0) * alpha.powf(1.0 - p),
                vec![
                    ExpansionTerm::new("C0", st.c0, 0.0, false),
                    ExpansionTerm::new("L1", st.l1, 3.0 - p, false),
                    ExpansionTerm::new("L2", st.l2, 5.0 - p, false),
                ],
            ),
            std::cmp::Ordering::Equal => (
                4.0 / (alpha * alpha),
                vec![
                    ExpansionTerm::new("C0,3", st.c0_3, 0.0, false),
                    ExpansionTerm::new("H3/2", 0.5 * st.h3, 2.0, false),
                ],
            ),
            std::cmp::Ordering::Greater => {
                let mut terms = vec![
                    ExpansionTerm::new("C0,3", st.c0_3, 0.0, false),
                    ExpansionTerm::new("H3", st.h3, 2.0, false),
                ];
                if classify(p, 5.0) != std::cmp::Ordering::Greater {
                    terms.push(ExpansionTerm::new("H2", st.h2, p - 3.0, false));
                }
                (8.0 / (alpha * alpha), terms)
            }
        };
        Ok(self.finish(alpha, prefactor, terms, 2, 1.0, Regime::Small, truncation))
    }

    /// ‖v_α′‖₂² for α → 0.
    pub fn gradsq_small(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let p = self.params.p();
        let st = self.statics()?;
        let terms: Vec<ExpansionTerm> = match classify(p, 3.0) {
            std::cmp::Ordering::Less => vec![
                ExpansionTerm::new("E0·C0", st.e0 * st.c0, 0.0, false),
                ExpansionTerm::new(
                    "E0·L1+C0·E1",
                    st.e0 * st.l1 + st.c0 * st.e1_small,
                    3.0 - p,
                    false,
                ),
            ],
            std::cmp::Ordering::Equal => {
                vec![ExpansionTerm::new("E0,3·C0,3", st.e0_3 * st.c0_3, 0.0, false)]
            }
            std::cmp::Ordering::Greater => {
                // Product of the μ bracket with (E0,3 + E5·α^{p−3}), flattened.
                let mut mu_terms = vec![(st.c0_3, 0.0), (st.h3, 2.0)];
                if classify(p, 5.0) != std::cmp::Ordering::Greater {
                    mu_terms.push((st.h2, p - 3.0));
                }
                let e_terms = [(st.e0_3, 0.0), (st.e5, p - 3.0)];
                let mut out = Vec::new();
                for (i, &(cm, em)) in mu_terms.iter().enumerate() {
                    for (j, &(ce, ee)) in e_terms.iter().enumerate() {
                        out.push(ExpansionTerm::new(
                            &format!("M{i}·E{j}"),
                            cm * ce,
                            em + ee,
                            false,
                        ));
                    }
                }
                out
            }
        };
        let prefactor = 4.0 * alpha * alpha;
        Ok(self.finish(alpha, prefactor, terms, 1, 1.0, Regime::Small, truncation))
    }

    /// λ(α) for α → 0, assembled as μ times the Kirchhoff factor.
    pub fn lambda_small(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        let mu = self.mu_small(alpha, truncation)?;
        let grad = self.gradsq_small(alpha, truncation)?;
        let factor = self.params.b() * grad.value + 1.0;
        let mut result = mu;
        result.factor = factor;
        result.value = result.assemble();
        Ok(result)
    }

    fn regime_for(alpha: f64) -> Regime {
        if alpha >= 1.0 {
            Regime::Large
        } else {
            Regime::Small
        }
    }

    /// μ expansion with automatic regime selection (α ≥ 1 → large family).
    pub fn mu_asym(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        match Self::regime_for(alpha) {
            Regime::Large => self.mu_large(alpha, truncation),
            Regime::Small => self.mu_small(alpha, truncation),
        }
    }

    /// ‖v′‖₂² expansion with automatic regime selection.
    pub fn gradsq_asym(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        match Self::regime_for(alpha) {
            Regime::Large => self.gradsq_large(alpha, truncation),
            Regime::Small => self.gradsq_small(alpha, truncation),
        }
    }

    /// λ expansion with automatic regime selection.
    pub fn lambda_asym(&self, alpha: f64, truncation: Truncation) -> Result<ExpansionResult> {
        match Self::regime_for(alpha) {
            Regime::Large => self.lambda_large(alpha, truncation),
            Regime::Small => self.lambda_small(alpha, truncation),
        }
    }

    /// Residual of the five-term time-map bracket, computed without
    /// subtracting two nearly equal quadratures.
    ///
    /// The binomial tail r(x) = (1+x)^{−1/2} − 1 + x/2 − 3x²/8, the mixed
    /// second-order block w = (xa+xb)² − 2x1·xb, and the exact tail of the
    /// x1·xa cross term (a single oscillatory integral scaled by α^{1−2p})
    /// together make up bracket_exact − Σ bracket terms exactly, so the
    /// residual keeps full relative accuracy even at ~1e−16 magnitudes.
    pub fn mu_bracket_residual(&self, alpha: f64) -> Result<f64> {
        let p = self.params.p();
        if classify(p, 2.0) != std::cmp::Ordering::Greater {
            return Err(Error::Domain(format!(
                "bracket residual is defined for the p > 2 family, got p = {p}"
            )));
        }
        let m = p + 1.0;
        let freq = if alpha > 2.0 { 2.0 * alpha } else { 0.0 };
        let spec = QuadSpec::unit()
            .with_right_exponent(-0.5)
            .with_frequency(freq)
            .with_tol(f64::MIN_POSITIVE, 1e-9);
        let tail = quad::integrate(
            |n: Node| {
                let parts = timemap::radicand_parts(&self.params, alpha, n.x, n.from_right);
                let x = parts.x();
                let ab = parts.xa + parts.xb;
                let w = ab * ab - 2.0 * parts.x1 * parts.xb;
                (binomial_tail_inv_sqrt(x) + 0.375 * w) / parts.q.sqrt()
            },
            &spec,
        )?
        .value;

        let j_spec = QuadSpec::unit()
            .with_right_exponent(-0.5)
            .with_frequency(freq)
            .with_tol(f64::MIN_POSITIVE, 1e-9);
        let j = quad::integrate(
            |n: Node| {
                let q = model::one_minus_pow(n.x, n.from_right, m);
                let one_minus_s2 = model::one_minus_pow(n.x, n.from_right, 2.0);
                one_minus_s2 * n.from_right / q.powf(2.5) * (2.0 * alpha * n.x).sin()
            },
            &j_spec,
        )?
        .value;

        Ok(tail - (3.0 / 64.0) * m * m * alpha.powf(1.0 - 2.0 * p) * j)
    }

    /// Residual of the five-term energy brace (‖v′‖₂²/(4α²) − ΣGk α^{…}),
    /// assembled from the exactly known bracket residuals and the cross
    /// products the expansion drops.
    pub fn gradsq_brace_residual(&self, alpha: f64) -> Result<f64> {
        let p = self.params.p();
        if classify(p, 2.0) != std::cmp::Ordering::Greater {
            return Err(Error::Domain(format!(
                "brace residual is defined for the p > 2 family, got p = {p}"
            )));
        }
        let st = self.statics()?;
        let osc = self.osc_constants(alpha)?;
        let c = self.c_ladder(st, &osc);
        let e = self.e_ladder(st, &osc);
        let c_as: f64 = c.iter().map(|(_, v, ex, _)| v * alpha.powf(*ex)).sum();
        let e_as: f64 = e.iter().map(|(_, v, ex, _)| v * alpha.powf(*ex)).sum();

        let rc = self.mu_bracket_residual(alpha)?;

        let freq = if alpha > 2.0 { 2.0 * alpha } else { 0.0 };
        let spec = QuadSpec::unit()
            .with_frequency(freq)
            .with_tol(f64::MIN_POSITIVE, 1e-9);
        let re = quad::integrate(
            |n: Node| {
                let parts = timemap::radicand_parts(&self.params, alpha, n.x, n.from_right);
                let x = parts.x();
                let ab = parts.xa + parts.xb;
                let w2 = ab * ab - 2.0 * parts.x1 * ab;
                (binomial_tail_sqrt(x) - 0.125 * w2) * parts.q.sqrt()
            },
            &spec,
        )?
        .value;

        // Cross products beyond (c0, e*), (c*, e0) and (c1, e1).
        let mut cross = 0.0;
        for (i, (_, cv, cx, _)) in c.iter().enumerate().skip(1) {
            for (j, (_, ev, ex, _)) in e.iter().enumerate().skip(1) {
                if i == 1 && j == 1 {
                    continue;
                }
                cross += cv * ev * alpha.powf(cx + ex);
            }
        }
        Ok(rc * e_as + c_as * re + rc * re + cross)
    }
}

/// (1+x)^{−1/2} − (1 − x/2 + 3x²/8): the k ≥ 3 binomial tail, summed as a
/// series for small |x| to avoid cancellation.
fn binomial_tail_inv_sqrt(x: f64) -> f64 {
    if !x.is_finite() || x.abs() > 0.25 {
        return (1.0 + x).powf(-0.5) - 1.0 + 0.5 * x - 0.375 * x * x;
    }
    // binom(−1/2, k) = binom(−1/2, k−1)·(−(2k−1)/(2k)); start at k = 3.
    let mut coef = -0.3125; // −5/16
    let mut xp = x * x * x;
    let mut sum = 0.0;
    for k in 3..80 {
        let term = coef * xp;
        sum += term;
        if term.abs() < 1e-20 * sum.abs().max(1e-300) {
            break;
        }
        xp *= x;
        let kf = (k + 1) as f64;
        coef *= -(2.0 * kf - 1.0) / (2.0 * kf);
    }
    sum
}

/// √(1+x) − (1 + x/2 − x²/8): the k ≥ 3 binomial tail of the square root.
fn binomial_tail_sqrt(x: f64) -> f64 {
    if !x.is_finite() || x.abs() > 0.25 {
        return (1.0 + x).sqrt() - 1.0 - 0.5 * x + 0.125 * x * x;
    }
    // binom(1/2, k) = binom(1/2, k−1)·(3/2 − k)/k; k = 3 gives 1/16.
    let mut coef = 0.0625;
    let mut xp = x * x * x;
    let mut sum = 0.0;
    for k in 3..80 {
        let term = coef * xp;
        sum += term;
        if term.abs() < 1e-20 * sum.abs().max(1e-300) {
            break;
        }
        xp *= x;
        let kf = (k + 1) as f64;
        coef *= (1.5 - kf) / kf;
    }
    sum
}
