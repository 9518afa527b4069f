use thiserror::Error;

/// Failure modes shared by every module of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller supplied an argument outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The operation has no defined value at this input.
    #[error("undefined input: {0}")]
    UndefinedInput(String),
    /// An internal consistency check failed. Indicates a bug in the engine.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    /// A closed-form prediction disagreed with the brute-force computation.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
