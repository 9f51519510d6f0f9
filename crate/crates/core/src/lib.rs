//! Exact bifurcation curves and asymptotic expansions for the one-dimensional
//! Kirchhoff-type problem −(b‖u′‖₂² + 1)u″ = λ(u^p + u sin²u), u(0) = u(1) = 0.
//!
//! The crate computes the curves λ(α), μ(α), ‖v_α′‖₂² exactly by the time-map
//! method (`timemap`), evaluates their large- and small-amplitude asymptotic
//! expansions with full term bookkeeping (`asymptotics`), and cross-validates
//! both against an independent shooting integrator (`oracle`). All integrals
//! run through the singularity- and oscillation-aware quadrature in `quad`.

pub mod asymptotics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod timemap;

pub use asymptotics::{AsymptoticEngine, ExpansionResult, ExpansionTerm, Regime, Truncation};
pub use error::{Error, Result};
pub use model::{Amplitude, ProblemParams};
pub use oracle::{RateFit, ShootResult};
pub use quad::{QuadResult, QuadSpec};
pub use timemap::{CurvePoint, Profile};
