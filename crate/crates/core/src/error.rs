use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A word handed to the label decoder is not an admissible extension.
    #[error("inadmissible extension word: {0}")]
    Admissibility(String),

    #[error("label entry overflow: {0}")]
    Overflow(String),

    /// Internal consistency check failed (indicates a bug, not bad input).
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
