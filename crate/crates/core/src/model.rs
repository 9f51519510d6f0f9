//! The nonlinearity f(θ) = θ^p + θ sin²θ, its potential, and the oscillatory
//! difference kernels and small-amplitude series built from it.
//!
//! Everything here is closed-form; the only numerical subtlety is cancellation
//! in differences like F(α) − F(αs) when αs is close to α, which the `*_diff`
//! helpers remove with product-form trigonometric identities and `expm1`/`ln_1p`.

use crate::error::{Error, Result};

/// Problem instance: −(b‖u′‖₂² + 1)u″ = λ(u^p + u sin²u), u(0) = u(1) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    p: f64,
    b: f64,
}

impl ProblemParams {
    /// Requires p > 1 (superlinear exponent) and b ≥ 0 (Kirchhoff coefficient).
    pub fn new(p: f64, b: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("exponent p must satisfy p > 1, got {p}")));
        }
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("Kirchhoff coefficient b must satisfy b >= 0, got {b}")));
        }
        Ok(Self { p, b })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Solution amplitude α = ‖u‖_∞ > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Amplitude(f64);

impl Amplitude {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("amplitude alpha must be positive, got {alpha}")));
        }
        Ok(Self(alpha))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// θ^p with θ = 0 special-cased to 0 so that non-integer p never faults.
fn pow_p(theta: f64, p: f64) -> f64 {
    if theta == 0.0 {
        0.0
    } else {
        (p * theta.ln()).exp()
    }
}

/// f(θ) = θ^p + θ sin²θ. Requires θ ≥ 0 (non-integer p).
pub fn f_eval(params: &ProblemParams, theta: f64) -> Result<f64> {
    if !(theta >= 0.0) {
        return Err(Error::Domain(format!("f(theta) needs theta >= 0, got {theta}")));
    }
    let s = theta.sin();
    Ok(pow_p(theta, params.p) + theta * s * s)
}

/// Trigonometric part of the potential:
/// T(θ) = θ²/4 − θ sin 2θ/4 − cos 2θ/8 + 1/8 = ∫₀^θ y sin²y dy.
///
/// For small θ the closed form loses all relative accuracy (T ~ θ⁴/4 while the
/// individual terms are O(θ²)), so we switch to the Taylor series
/// T(θ) = Σ_{k≥1} (−1)^{k−1} 2^{2k−1} θ^{2k+2} / ((2k+2)(2k)!).
pub fn trig_potential(theta: f64) -> f64 {
    if theta <= 1.0 {
        let t2 = theta * theta;
        let mut sum = 0.0;
        let mut coeff = 1.0; // 2^{2k-1}/(2k)! at k = 1

        let mut theta_pow = t2 * t2; // θ^{2k+2} at k = 1
        let mut sign = 1.0;
        for k in 1..40 {
            let term = sign * coeff * theta_pow / (2.0 * k as f64 + 2.0);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            sign = -sign;
            let kk = 2.0 * k as f64;
            coeff *= 4.0 / ((kk + 1.0) * (kk + 2.0));
            theta_pow *= t2;
        }
        sum
    } else {
        let (s2, c2) = (2.0 * theta).sin_cos();
        theta * theta / 4.0 - theta * s2 / 4.0 - c2 / 8.0 + 0.125
    }
}

/// Potential F(θ) = θ^{p+1}/(p+1) + θ²/4 − θ sin 2θ/4 − cos 2θ/8 + 1/8.
pub fn potential_f(params: &ProblemParams, theta: f64) -> Result<f64> {
    if !(theta >= 0.0) {
        return Err(Error::Domain(format!("F(theta) needs theta >= 0, got {theta}")));
    }
    Ok(pow_p(theta, params.p + 1.0) / (params.p + 1.0) + trig_potential(theta))
}

/// 1 − s^m without cancellation, given both s and 1 − s.
///
/// For s near 1, 1 − s^m = −expm1(m·ln(1 − (1−s))) keeps full relative accuracy.
pub fn one_minus_pow(s: f64, one_minus_s: f64, m: f64) -> f64 {
    if s <= 0.0 {
        1.0
    } else if s < 0.5 {
        1.0 - s.powf(m)
    } else {
        -(m * (-one_minus_s).ln_1p()).exp_m1()
    }
}

/// A_α(αs) = (p+1)/4 · (α sin 2α − θ sin 2θ) with θ = αs, evaluated without
/// cancellation via α sin 2α − θ sin 2θ = 2α cos(α+θ) sin(α−θ) + (α−θ) sin 2θ.
pub fn osc_a_diff(p: f64, alpha: f64, s: f64, one_minus_s: f64) -> f64 {
    let theta = alpha * s;
    let delta = alpha * one_minus_s;
    let d = 2.0 * alpha * (alpha + theta).cos() * delta.sin() + delta * (2.0 * theta).sin();
    0.25 * (p + 1.0) * d
}

/// B_α(αs) = (p+1)/8 · (cos 2α − cos 2θ) = −(p+1)/4 · sin(α+θ) sin(α−θ).
pub fn osc_b_diff(p: f64, alpha: f64, s: f64, one_minus_s: f64) -> f64 {
    let theta = alpha * s;
    let delta = alpha * one_minus_s;
    -0.25 * (p + 1.0) * (alpha + theta).sin() * delta.sin()
}

/// Oscillatory kernel A_α(θ) = (p+1)/4 (α sin 2α − θ sin 2θ), 0 ≤ θ ≤ α.
pub fn osc_a(params: &ProblemParams, alpha: Amplitude, theta: f64) -> Result<f64> {
    let a = alpha.value();
    if !(0.0..=a).contains(&theta) {
        return Err(Error::Domain(format!("osc_a needs 0 <= theta <= alpha, got theta = {theta}, alpha = {a}")));
    }
    Ok(osc_a_diff(params.p, a, theta / a, (a - theta) / a))
}

/// Oscillatory kernel B_α(θ) = (p+1)/8 (cos 2α − cos 2θ), 0 ≤ θ ≤ α.
pub fn osc_b(params: &ProblemParams, alpha: Amplitude, theta: f64) -> Result<f64> {
    let a = alpha.value();
    if !(0.0..=a).contains(&theta) {
        return Err(Error::Domain(format!("osc_b needs 0 <= theta <= alpha, got theta = {theta}, alpha = {a}")));
    }
    Ok(osc_b_diff(params.p, a, theta / a, (a - theta) / a))
}

/// F(α) − F(αs), stable for s near 1 and for small α.
///
/// The power part uses [`one_minus_pow`]; the trigonometric part uses the
/// series difference for α ≤ 3/2 and product-form identities otherwise.
pub fn potential_diff(params: &ProblemParams, alpha: f64, s: f64, one_minus_s: f64) -> f64 {
    let p1 = params.p + 1.0;
    let power = pow_p(alpha, p1) * one_minus_pow(s, one_minus_s, p1) / p1;
    let trig = if alpha <= 1.5 {
        // T(α) − T(αs) summed term by term: Σ c_k α^{2k+2} (1 − s^{2k+2}).
        let a2 = alpha * alpha;
        let mut coeff = 1.0; // 2^{2k-1}/(2k)! at k = 1
        let mut alpha_pow = a2 * a2;
        let mut sign = 1.0;
        let mut sum = 0.0;
        for k in 1..40 {
            let m = 2.0 * k as f64 + 2.0;
            let term = sign * coeff * alpha_pow / m * one_minus_pow(s, one_minus_s, m);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            sign = -sign;
            let kk = 2.0 * k as f64;
            coeff *= 4.0 / ((kk + 1.0) * (kk + 2.0));
            alpha_pow *= a2;
        }
        sum
    } else {
        let theta = alpha * s;
        let delta = alpha * one_minus_s;
        // α² − θ² = α²(1−s)(1+s)
        let quad = alpha * alpha * one_minus_s * (1.0 + s) / 4.0;
        let a_sin = 2.0 * alpha * (alpha + theta).cos() * delta.sin() + delta * (2.0 * theta).sin();
        let b_cos = -2.0 * (alpha + theta).sin() * delta.sin();
        quad - a_sin / 4.0 - b_cos / 8.0
    };
    power + trig
}

const M_SERIES_MAX_N: usize = 40;

fn check_m_args(alpha: f64, w: f64, n_max: Option<usize>) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("series needs alpha > 0, got {alpha}")));
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("series needs 0 <= w <= 1, got {w}")));
    }
    if let Some(n) = n_max {
        if n < 3 {
            return Err(Error::Domain(format!("series starts at n = 3, got n_max = {n}")));
        }
    }
    Ok(())
}

/// Generic Σ_{n=3}^{n_max} (−1)^n 2^{2n−3} c_n (1 − w^{2n}) α^{2n} with
/// c_n = weight(n); shared by the H, J, M series.
fn oscillation_series(alpha: f64, w: f64, n_max: Option<usize>, weight: impl Fn(f64, f64) -> f64) -> f64 {
    let one_minus_w = 1.0 - w;
    let n_max = n_max.unwrap_or(M_SERIES_MAX_N).min(M_SERIES_MAX_N);
    let a2 = alpha * alpha;
    let mut sum = 0.0;
    // 2^{2n-3} α^{2n} at n = 3, and the factorials (2n−1)!, (2n)!.
    let mut pow = 8.0 * a2 * a2 * a2;
    let mut fact_odd = 120.0; // 5!
    let mut fact_even = 720.0; // 6!
    let mut sign = -1.0; // (−1)^3
    for n in 3..=n_max {
        let m = 2.0 * n as f64;
        let term = sign * pow * one_minus_pow(w, one_minus_w, m) * weight(fact_odd, fact_even);
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            break;
        }
        sign = -sign;
        pow *= 4.0 * a2;
        fact_odd *= m * (m + 1.0);
        fact_even *= (m + 1.0) * (m + 2.0);
    }
    sum
}

/// M_α(w) = Σ_{n=3}^∞ (−1)^n 2^{2n−3} {1/(2n−1)! − 1/(2n)!} (1 − w^{2n}) α^{2n},
/// the tail of F(α) − F(αw) beyond the power and quartic terms:
/// M = F(α) − F(αw) − α^{p+1}(1−w^{p+1})/(p+1) − α⁴(1−w⁴)/4.
///
/// `n_max = None` truncates automatically (|term| < 1e−16·|sum| or n = 40).
pub fn small_alpha_m(alpha: f64, w: f64, n_max: Option<usize>) -> Result<f64> {
    check_m_args(alpha, w, n_max)?;
    Ok(oscillation_series(alpha, w, n_max, |fo, fe| 1.0 / fo - 1.0 / fe))
}

/// H-part of M: Σ (−1)^n 2^{2n−3} (1 − w^{2n}) α^{2n} / (2n−1)!.
pub fn small_alpha_h(alpha: f64, w: f64, n_max: Option<usize>) -> Result<f64> {
    check_m_args(alpha, w, n_max)?;
    Ok(oscillation_series(alpha, w, n_max, |fo, _| 1.0 / fo))
}

/// J-part of M: −Σ (−1)^n 2^{2n−3} (1 − w^{2n}) α^{2n} / (2n)!, so M = H + J.
pub fn small_alpha_j(alpha: f64, w: f64, n_max: Option<usize>) -> Result<f64> {
    check_m_args(alpha, w, n_max)?;
    Ok(oscillation_series(alpha, w, n_max, |_, fe| -1.0 / fe))
}

/// Small-amplitude kernel K(s) = −(p+1)(1 − s⁶) / (18 (1 − s^{p+1})), with the
/// analytic limit K(1) = −1/3 (l'Hôpital: (1−s⁶)/(1−s^{p+1}) → 6/(p+1)).
pub fn small_alpha_k(params: &ProblemParams, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("small_alpha_k needs 0 <= s <= 1, got {s}")));
    }
    if s == 1.0 {
        return Ok(-1.0 / 3.0);
    }
    let oms = 1.0 - s;
    let ratio = one_minus_pow(s, oms, 6.0) / one_minus_pow(s, oms, params.p + 1.0);
    Ok(-(params.p + 1.0) * ratio / 18.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(p: f64) -> ProblemParams {
        ProblemParams::new(p, 0.0).unwrap()
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ProblemParams::new(1.0, 0.0).is_err());
        assert!(ProblemParams::new(0.5, 0.0).is_err());
        assert!(ProblemParams::new(f64::NAN, 0.0).is_err());
        assert!(ProblemParams::new(3.0, -0.1).is_err());
        assert!(ProblemParams::new(3.0, 0.0).is_ok());
        assert!(Amplitude::new(0.0).is_err());
        assert!(Amplitude::new(-1.0).is_err());
        assert!(Amplitude::new(1e-9).is_ok());
    }

    #[test]
    fn f_eval_known_values() {
        let p3 = params(3.0);
        assert_eq!(f_eval(&p3, 0.0).unwrap(), 0.0);
        assert!((f_eval(&p3, PI).unwrap() - PI.powi(3)).abs() < 1e-12);
        // sin²(1) + 1, frozen from high-precision evaluation
        let p2 = params(2.0);
        assert!((f_eval(&p2, 1.0).unwrap() - 1.7080734182735712).abs() < 1e-15);
        assert!(f_eval(&p3, -0.1).is_err());
    }

    #[test]
    fn potential_known_values() {
        let p3 = params(3.0);
        assert_eq!(potential_f(&p3, 0.0).unwrap(), 0.0);
        let expected = PI.powi(4) / 4.0 + PI.powi(2) / 4.0;
        assert!((potential_f(&p3, PI).unwrap() - expected).abs() < 1e-12 * expected);
        // F(p=2, θ=1.3), frozen from high-precision quadrature of f
        let p2 = params(2.0);
        let v = potential_f(&p2, 1.3).unwrap();
        assert!((v - 1.2194064816624759).abs() < 1e-14, "F(2, 1.3) = {v}");
        assert!(potential_f(&p2, -1e-12).is_err());
    }

    #[test]
    fn trig_potential_series_matches_closed_form() {
        // Compare the two branches across the switch point.
        for &theta in &[0.5, 0.9, 0.999, 1.0, 1.0001, 1.2, 1.5] {
            let series = {
                let t2 = theta * theta;
                let mut sum = 0.0;
                let mut coeff = 1.0;
                let mut tp = t2 * t2;
                let mut sign = 1.0;
                for k in 1..60 {
                    sum += sign * coeff * tp / (2.0 * k as f64 + 2.0);
                    sign = -sign;
                    let kk = 2.0 * k as f64;
                    coeff *= 4.0 / ((kk + 1.0) * (kk + 2.0));
                    tp *= t2;
                }
                sum
            };
            let closed = {
                let (s2, c2) = (2.0 * theta).sin_cos();
                theta * theta / 4.0 - theta * s2 / 4.0 - c2 / 8.0 + 0.125
            };
            assert!((series - closed).abs() < 1e-15 * closed.max(1e-3), "theta = {theta}");
            assert!((trig_potential(theta) - closed).abs() < 1e-14 * closed.max(1e-3));
        }
    }

    #[test]
    fn osc_kernels_known_values() {
        let p3 = params(3.0);
        let a10 = Amplitude::new(10.0).unwrap();
        assert_eq!(osc_a(&p3, a10, 10.0).unwrap(), 0.0);
        // (p+1)/4 (10 sin 20 − 5 sin 10), frozen
        let v = osc_a(&p3, a10, 5.0).unwrap();
        assert!((v - 11.849558061723126).abs() < 1e-12, "osc_a = {v}");
        let at0 = osc_a(&p3, a10, 0.0).unwrap();
        assert!((at0 - 10.0 * (20.0f64).sin()).abs() < 1e-12);
        assert!(osc_a(&p3, a10, 10.1).is_err());
        assert!(osc_a(&p3, a10, -0.1).is_err());

        let p2 = params(2.0);
        let a7 = Amplitude::new(7.0).unwrap();
        let vb = osc_b(&p2, a7, 2.0).unwrap();
        assert!((vb - 0.29639281465179207).abs() < 1e-13, "osc_b = {vb}");
        let api = Amplitude::new(PI).unwrap();
        assert!(osc_b(&p3, api, 0.0).unwrap().abs() < 1e-15);
        assert_eq!(osc_b(&p2, a7, 7.0).unwrap(), 0.0);
    }

    #[test]
    fn one_minus_pow_is_stable() {
        // Exact at the ends and accurate in the cancellation regime.
        assert_eq!(one_minus_pow(0.0, 1.0, 3.5), 1.0);
        assert_eq!(one_minus_pow(1.0, 0.0, 3.5), 0.0);
        for &(s, m) in &[(0.3, 4.0), (0.7, 3.5), (0.99, 6.0), (1.0 - 1e-12, 2.5)] {
            let oms = 1.0 - s;
            let stable = one_minus_pow(s, oms, m);
            // reference: m·oms − m(m−1)/2·oms² + ... for s→1, plain otherwise
            let reference = -(m * (-oms as f64).ln_1p()).exp_m1();
            assert!((stable - reference).abs() <= 1e-15 * reference.abs());
        }
    }

    #[test]
    fn potential_diff_matches_naive_at_moderate_arguments() {
        for &p in &[1.5, 2.0, 2.5, 3.0, 4.0, 6.0] {
            let pr = params(p);
            for &alpha in &[0.3, 1.0, 1.4, 2.0, 9.0] {
                for &s in &[0.0, 0.25, 0.6, 0.9] {
                    let diff = potential_diff(&pr, alpha, s, 1.0 - s);
                    let naive = potential_f(&pr, alpha).unwrap() - potential_f(&pr, alpha * s).unwrap();
                    assert!(
                        (diff - naive).abs() < 1e-12 * naive.abs().max(1e-300),
                        "p={p} alpha={alpha} s={s}: {diff} vs {naive}"
                    );
                }
            }
        }
    }

    #[test]
    fn potential_diff_positive_near_endpoint() {
        // The radicand must stay strictly positive right up to s = 1.
        for &p in &[1.5, 2.5, 3.0, 6.0] {
            let pr = params(p);
            for &alpha in &[1e-3, 1e-2, 1.0, 10.0, 500.0] {
                for k in 1..=12 {
                    let oms = 10f64.powi(-k);
                    let d = potential_diff(&pr, alpha, 1.0 - oms, oms);
                    assert!(d > 0.0, "p={p} alpha={alpha} oms={oms}: diff = {d}");
                }
            }
        }
    }

    #[test]
    fn m_series_identity_with_potential() {
        // M = F(α) − F(αw) − α^{p+1}(1−w^{p+1})/(p+1) − α⁴(1−w⁴)/4 for p = 3
        // reduces to M = T(α) − T(αw) − α⁴(1−w⁴)/4 for the trig part alone.
        for &(alpha, w) in &[(0.1, 0.0), (0.2, 0.5), (0.5, 0.25), (1.0, 0.9)] {
            let m = small_alpha_m(alpha, w, None).unwrap();
            let t_diff = trig_potential(alpha) - trig_potential(alpha * w);
            let quartic = alpha.powi(4) * (1.0 - w.powi(4)) / 4.0;
            assert!((m - (t_diff - quartic)).abs() < 1e-14 * (1.0 + quartic), "alpha={alpha} w={w}");
        }
        // frozen high-precision value at (α = 0.2, w = 0.5)
        let m = small_alpha_m(0.2, 0.5, None).unwrap();
        assert!((m - -3.4858657614256561e-6).abs() < 1e-19, "M = {m:e}");
    }

    #[test]
    fn m_series_truncation_and_edges() {
        assert_eq!(small_alpha_m(0.3, 1.0, None).unwrap(), 0.0);
        // alternating series: truncation error below the first dropped term,
        // which at n = 4 is 2⁵(1/7! − 1/8!)(1 − w⁸)α⁸
        let m3 = small_alpha_m(0.2, 0.5, Some(3)).unwrap();
        let m20 = small_alpha_m(0.2, 0.5, Some(20)).unwrap();
        let bound = 32.0 * 7.0 / 40320.0 * 0.2f64.powi(8);
        assert!((m3 - m20).abs() < bound);
        // H + J = M
        let h = small_alpha_h(0.4, 0.3, None).unwrap();
        let j = small_alpha_j(0.4, 0.3, None).unwrap();
        let m = small_alpha_m(0.4, 0.3, None).unwrap();
        assert!((h + j - m).abs() < 1e-12 * m.abs());
        assert!(small_alpha_m(0.2, 1.5, None).is_err());
        assert!(small_alpha_m(0.2, 0.5, Some(2)).is_err());
    }

    #[test]
    fn k_kernel_values() {
        let p2 = params(2.0);
        assert!((small_alpha_k(&p2, 0.0).unwrap() - (-1.0 / 6.0)).abs() < 1e-15);
        assert!((small_alpha_k(&p2, 1.0).unwrap() - (-1.0 / 3.0)).abs() < 1e-15);
        // limit is p-independent
        let p6 = params(6.0);
        assert!((small_alpha_k(&p6, 1.0).unwrap() - (-1.0 / 3.0)).abs() < 1e-15);
        // continuity into the limit
        let near = small_alpha_k(&p2, 1.0 - 1e-9).unwrap();
        assert!((near - (-1.0 / 3.0)).abs() < 1e-8);
        // frozen high-precision value
        let v = small_alpha_k(&params(2.5), 0.9).unwrap();
        assert!((v - -0.29541432235721664).abs() < 1e-15, "K = {v}");
        assert!(small_alpha_k(&p2, -0.1).is_err());
        assert!(small_alpha_k(&p2, 1.1).is_err());
    }
}
