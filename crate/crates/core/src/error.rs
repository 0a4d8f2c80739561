use thiserror::Error;

/// Errors reported by constructors, parsers and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes of the inputs do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Input data violates a structural invariant (bad index, duplicate
    /// triple, non-antisymmetric table, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A stated precondition of the operation does not hold for the input.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// Text could not be parsed into the requested value.
    #[error("parse error: {0}")]
    Parse(String),

    /// File-level I/O problem.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A solver produced output that failed its own re-verification.
    /// Seeing this is a bug in the crate, not in the input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
