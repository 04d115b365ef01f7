//! Crate-wide error type.

use std::fmt;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violates a documented precondition (wrong parity, size, range).
    InvalidArgument(String),
    /// Input lies outside the mathematical domain of the function.
    Domain(String),
    /// The requested order or configuration cannot be computed at full precision.
    PrecisionLoss(String),
    /// A shifted eigenvalue landed exactly on zero, so the log-determinant diverges.
    SingularShift,
    /// The characteristic function did not decay below the requested threshold.
    NoDecay(String),
    /// Nonlinear least squares failed to reach the convergence criterion.
    FitFailure {
        iterations: usize,
        gradient_norm: f64,
        residual_norm: f64,
    },
    /// Two grids that must share identical abscissae do not.
    GridMismatch(String),
    /// Too few samples for the requested statistic.
    InsufficientSamples { needed: usize, got: usize },
    /// The regression design matrix is rank deficient.
    RankDeficient(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::PrecisionLoss(msg) => write!(f, "precision loss: {msg}"),
            Self::SingularShift => write!(f, "shifted eigenvalue is exactly zero"),
            Self::NoDecay(msg) => write!(f, "characteristic function does not decay: {msg}"),
            Self::FitFailure {
                iterations,
                gradient_norm,
                residual_norm,
            } => write!(
                f,
                "fit did not converge after {iterations} iterations \
                 (gradient norm {gradient_norm:.3e}, residual norm {residual_norm:.3e})"
            ),
            Self::GridMismatch(msg) => write!(f, "grid mismatch: {msg}"),
            Self::InsufficientSamples { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            Self::RankDeficient(msg) => write!(f, "rank-deficient system: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
