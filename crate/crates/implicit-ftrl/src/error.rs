//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A sparse feature index falls outside a dense vector.
    #[error("dimension mismatch: feature index {index} but vector has length {len}")]
    DimensionMismatch { index: usize, len: usize },

    /// Proximal step sizes must be strictly positive.
    #[error("step size must be positive, got {0}")]
    NonPositiveEta(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed dataset line; `line` is 1-based.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// The 1-D proximal root finder exhausted its iteration budget.
    #[error("proximal solver did not converge after {0} iterations")]
    ProxNoConvergence(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    /// A regret query was made with a loss sequence of the wrong length.
    #[error("length mismatch: report covers {report} rounds, loss sequence has {losses}")]
    LengthMismatch { report: usize, losses: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
