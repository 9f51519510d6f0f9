//! Exact bifurcation curves via the time-map method.
//!
//! For −u″ = μ f(u), u(0) = u(1) = 0 with amplitude α = u(1/2), the energy
//! reduction gives u′ = √(2μ(F(α) − F(u))) on [0, 1/2], hence
//!
//!   G(α) := ∫₀^α dθ/√(F(α) − F(θ)),   μ(α) = 2 G(α)²,
//!   ‖u′‖₂² = 2√(2μ)·∫₀^α √(F(α) − F(θ)) dθ,
//!   λ(α) = (b‖u′‖₂² + 1)·μ(α).
//!
//! All integrals are taken after θ = αs so the domain is [0, 1] with a fixed
//! (1 − s)^{−1/2} right-endpoint singularity for G.

use crate::error::{Error, Result};
use crate::model::{self, ProblemParams};
use crate::quad::{self, Node, QuadResult, QuadSpec};

/// One point of the exact bifurcation curve.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub alpha: f64,
    /// Eigenvalue of the local problem −u″ = μ f(u).
    pub mu: f64,
    /// ‖v_α′‖₂², squared L² norm of the derivative.
    pub grad_norm_sq: f64,
    /// Eigenvalue of the Kirchhoff problem, λ = (b‖v′‖₂² + 1)μ.
    pub lambda: f64,
    /// Propagated quadrature error estimates.
    pub err_mu: f64,
    pub err_grad: f64,
}

/// Reconstructed solution profile on [0, 1].
#[derive(Debug, Clone)]
pub struct Profile {
    pub xs: Vec<f64>,
    pub vs: Vec<f64>,
    pub alpha: f64,
    pub mu: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// Oscillation frequency to declare for integrals in s over [0, 1] whose
/// integrand contains trig(2αs); below α = 2 there is less than one period.
fn curve_frequency(alpha: f64) -> f64 {
    if alpha > 2.0 {
        2.0 * alpha
    } else {
        0.0
    }
}

/// G(α) = α ∫₀¹ ds/√(F(α) − F(αs)), with its quadrature error estimate.
pub fn time_map_g(params: &ProblemParams, alpha: f64) -> Result<QuadResult> {
    check_alpha(alpha)?;
    let spec = QuadSpec::unit()
        .with_right_exponent(-0.5)
        .with_frequency(curve_frequency(alpha))
        .with_tol(f64::MIN_POSITIVE, 1e-11);
    let mut result = quad::integrate(
        |n: Node| {
            let diff = model::potential_diff(params, alpha, n.x, n.from_right);
            if diff > 0.0 {
                1.0 / diff.sqrt()
            } else {
                // Radicand positivity is an invariant (f > 0); a non-positive
                // value can only be the sampled endpoint itself.
                f64::INFINITY
            }
        },
        &spec,
    )?;
    result.value *= alpha;
    result.error_estimate *= alpha;
    Ok(result)
}

/// μ(α) = 2 G(α)², from the boundary condition 1/2 = G/√(2μ).
pub fn mu_of_alpha(params: &ProblemParams, alpha: f64) -> Result<f64> {
    let g = time_map_g(params, alpha)?;
    Ok(2.0 * g.value * g.value)
}

/// ‖v_α′‖₂² = 2√(2μ)·α ∫₀¹ √(F(α) − F(αs)) ds for μ = μ(α).
pub fn grad_norm_sq(params: &ProblemParams, alpha: f64, mu: f64) -> Result<QuadResult> {
    check_alpha(alpha)?;
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    let spec = QuadSpec::unit()
        .with_frequency(curve_frequency(alpha))
        .with_tol(f64::MIN_POSITIVE, 1e-11);
    let mut result = quad::integrate(
        |n: Node| {
            let diff = model::potential_diff(params, alpha, n.x, n.from_right);
            if diff > 0.0 {
                diff.sqrt()
            } else {
                0.0
            }
        },
        &spec,
    )?;
    let factor = 2.0 * (2.0 * mu).sqrt() * alpha;
    result.value *= factor;
    result.error_estimate *= factor;
    Ok(result)
}

/// Assemble the full curve point at α; λ = (b·‖v′‖₂² + 1)·μ exactly as stored.
pub fn lambda_of_alpha(params: &ProblemParams, alpha: f64) -> Result<CurvePoint> {
    let g = time_map_g(params, alpha)?;
    let mu = 2.0 * g.value * g.value;
    let err_mu = 4.0 * g.value.abs() * g.error_estimate;
    let grad = grad_norm_sq(params, alpha, mu)?;
    // grad ∝ √μ, so its error inherits half the relative error of μ.
    let err_grad = grad.error_estimate + 0.5 * grad.value * (err_mu / mu);
    let lambda = (params.b() * grad.value + 1.0) * mu;
    Ok(CurvePoint {
        alpha,
        mu,
        grad_norm_sq: grad.value,
        lambda,
        err_mu,
        err_grad,
    })
}

/// Multiplicative blocks of the normalized time-map radicand:
/// F(α) − F(αs) = (α^{p+1}/(p+1))·q·(1 + x1 − xa − xb) with q = 1 − s^{p+1},
/// x1 = (p+1)α^{1−p}(1−s²)/(4q), xa = A_α(αs)/(α^{p+1}q), xb likewise for B.
#[derive(Debug, Clone, Copy)]
pub struct RadicandParts {
    pub q: f64,
    pub x1: f64,
    pub xa: f64,
    pub xb: f64,
}

impl RadicandParts {
    /// x = x1 − xa − xb, the deviation of the radicand from its leading block.
    pub fn x(&self) -> f64 {
        self.x1 - self.xa - self.xb
    }
}

/// Compute the normalized radicand blocks at (s, 1 − s).
pub fn radicand_parts(params: &ProblemParams, alpha: f64, s: f64, one_minus_s: f64) -> RadicandParts {
    let p = params.p();
    let q = model::one_minus_pow(s, one_minus_s, p + 1.0);
    let denom = alpha.powf(p + 1.0) * q;
    let x1 = 0.25 * (p + 1.0) * alpha.powf(1.0 - p) * model::one_minus_pow(s, one_minus_s, 2.0) / q;
    let xa = model::osc_a_diff(p, alpha, s, one_minus_s) / denom;
    let xb = model::osc_b_diff(p, alpha, s, one_minus_s) / denom;
    RadicandParts { q, x1, xa, xb }
}

/// The bracket of the paper-normalized time map:
/// ∫₀¹ (1 − s^{p+1})^{−1/2} (1 + x)^{−1/2} ds, so that
/// G = √(p+1)·α^{(1−p)/2}·bracket and μ = 2(p+1)α^{1−p}·bracket².
///
/// Only meaningful for α ≳ 1: at small α the blocks x1, xa, xb individually
/// blow up like α^{1−p} and their cancellation destroys the form.
pub fn normalized_bracket(params: &ProblemParams, alpha: f64) -> Result<QuadResult> {
    check_alpha(alpha)?;
    if alpha < 1.0 {
        return Err(Error::Domain(format!(
            "normalized bracket requires alpha >= 1 (got {alpha}); use time_map_g instead"
        )));
    }
    let spec = QuadSpec::unit()
        .with_right_exponent(-0.5)
        .with_frequency(curve_frequency(alpha))
        .with_tol(f64::MIN_POSITIVE, 1e-11);
    quad::integrate(
        |n: Node| {
            let parts = radicand_parts(params, alpha, n.x, n.from_right);
            let radicand = parts.q * (1.0 + parts.x());
            if radicand > 0.0 {
                1.0 / radicand.sqrt()
            } else {
                f64::INFINITY
            }
        },
        &spec,
    )
}

/// Arc-length condition ∫₀^v dθ/√(2μ(F(α) − F(θ))) evaluated by quadrature.
fn arc_integral(params: &ProblemParams, alpha: f64, mu: f64, v: f64) -> Result<f64> {
    if v == 0.0 {
        return Ok(0.0);
    }
    let spec = QuadSpec::unit()
        .with_right_exponent(-0.5)
        .with_frequency(if v > 2.0 { 2.0 * v } else { 0.0 })
        .with_tol(f64::MIN_POSITIVE, 1e-10);
    let result = quad::integrate(
        |n: Node| {
            let theta = v * n.x;
            // 1 − θ/α = (α − v + v(1 − t))/α, assembled without cancellation
            let oms = ((alpha - v) + v * n.from_right) / alpha;
            let diff = model::potential_diff(params, alpha, theta / alpha, oms);
            if diff > 0.0 {
                1.0 / (2.0 * mu * diff).sqrt()
            } else {
                f64::INFINITY
            }
        },
        &spec,
    )?;
    Ok(v * result.value)
}

/// Reconstruct v_α on an `n_points` uniform grid over [0, 1] by inverting the
/// arc-length condition with bisection + Newton; the right half is mirrored
/// from the symmetry v(x) = v(1 − x).
pub fn solution_profile(params: &ProblemParams, alpha: f64, n_points: usize) -> Result<Profile> {
    check_alpha(alpha)?;
    if n_points < 3 {
        return Err(Error::Domain(format!("profile needs at least 3 points, got {n_points}")));
    }
    let mu = mu_of_alpha(params, alpha)?;
    let n = n_points;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let mut vs = vec![0.0; n];

    let mut lo_prev = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        if x == 0.0 {
            vs[i] = 0.0;
            continue;
        }
        if x > 0.5 {
            break;
        }
        if x == 0.5 {
            vs[i] = alpha;
            continue;
        }
        // Bisection from the last solved point down to width 1e−3·α.
        let mut lo = lo_prev;
        let mut hi = alpha;
        while hi - lo > 1e-3 * alpha {
            let mid = 0.5 * (lo + hi);
            if arc_integral(params, alpha, mu, mid)? < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton with the exact derivative d(arc)/dv = 1/√(2μ(F(α) − F(v))).
        let mut v = 0.5 * (lo + hi);
        let mut converged = false;
        for _ in 0..60 {
            let res = arc_integral(params, alpha, mu, v)? - x;
            let diff = model::potential_diff(params, alpha, v / alpha, (alpha - v) / alpha);
            if !(diff > 0.0) {
                return Err(Error::BracketFailure(format!(
                    "radicand vanished during profile Newton at v = {v}, alpha = {alpha}"
                )));
            }
            let step = res * (2.0 * mu * diff).sqrt();
            v = (v - step).clamp(0.0, alpha);
            if step.abs() <= 1e-12 * alpha {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::BracketFailure(format!(
                "profile inversion did not converge at x = {x}, alpha = {alpha}"
            )));
        }
        vs[i] = v;
        lo_prev = v;
    }
    // Mirror the right half.
    for i in 0..n {
        if xs[i] > 0.5 {
            vs[i] = vs[n - 1 - i];
        }
    }
    Ok(Profile { xs, vs, alpha, mu })
}

/// Logarithmically spaced grid with exact endpoints.
pub fn log_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0) || !(max > min) || !max.is_finite() {
        return Err(Error::Domain(format!("log grid needs 0 < min < max, got [{min}, {max}]")));
    }
    if points < 2 {
        return Err(Error::Domain(format!("log grid needs >= 2 points, got {points}")));
    }
    let ln_min = min.ln();
    let ln_max = max.ln();
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (ln_min + (ln_max - ln_min) * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid[0] = min;
    grid[points - 1] = max;
    Ok(grid)
}
