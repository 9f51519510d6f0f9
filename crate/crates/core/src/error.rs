//! Error type shared by all numerical routines.

use thiserror::Error;

/// Errors produced by the numerical engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature failed to reach the requested tolerance within its budget.
    ///
    /// The best value obtained so far and its error estimate are carried so
    /// callers can decide whether the result is still usable.
    #[error("quadrature did not converge: value {value:e}, error estimate {estimate:e} after {evaluations} evaluations")]
    NonConvergence {
        value: f64,
        estimate: f64,
        evaluations: u64,
    },

    /// Root finding could not maintain a sign-changing bracket.
    #[error("root bracketing failed: {0}")]
    BracketFailure(String),

    /// The adaptive ODE integrator's step size underflowed (stiffness or blow-up).
    #[error("ODE step size underflow at x = {x}")]
    StepSizeUnderflow { x: f64 },

    /// A rate fit was requested on data that cannot support one.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
