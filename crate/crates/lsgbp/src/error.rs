//! Library error type.

/// Errors surfaced by the engine. Everything except `Internal` indicates a
/// caller-side problem (malformed data, mismatched dimensions, or a request
/// outside a stated budget).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("incompatible type specification: {0}")]
    Incompatible(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A violated internal invariant; reaching this is a bug in the engine.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
