//! Error types shared across the library.

use thiserror::Error;

/// Errors raised by library operations.
///
/// Verification routines do not use this type: a failing check is reported,
/// not raised. Errors signal malformed arguments, geometric degeneracies
/// (failed transversality, singular blocks), or violated preconditions.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("argument error: {0}")]
    Argument(String),

    #[error("linear algebra: {0}")]
    Linear(String),

    #[error("geometric degeneracy: {0}")]
    Geometric(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("series does not terminate under current truncation: {0}")]
    NonTerminating(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("spec file parse error: {0}")]
    Parse(String),
}

impl CoreError {
    pub fn arg(msg: impl Into<String>) -> Self {
        CoreError::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
