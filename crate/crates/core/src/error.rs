//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SpecError {
    /// A parameter violates a documented precondition (positivity, range, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Evaluation requested at (or numerically on top of) a pole.
    #[error("pole at {what} = {location}")]
    Pole { what: &'static str, location: f64 },

    /// A defining series diverges for the requested arguments.
    #[error("series diverges: {0}")]
    Divergent(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: err_est = {err_est:.3e} > tol = {tol:.3e}")]
    QuadratureFailure { err_est: f64, tol: f64 },

    /// An eigensolve failed (non-positive-definite mass matrix, ...).
    #[error("eigensolve failed: {0}")]
    EigenFailure(String),

    /// Requested an analytic continuation branch that is not implemented
    /// (and not needed by any formula in scope).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A mode index is outside the range allowed by the basis.
    #[error("invalid mode index: {0}")]
    InvalidIndex(String),

    /// Numeric limit extraction probes disagree beyond tolerance.
    #[error("extrapolation unstable: spread {spread:.3e}")]
    ExtrapolationUnstable { spread: f64 },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, SpecError>;
