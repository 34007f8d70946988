use thiserror::Error;

/// Errors returned by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A truth table would exceed the configured brute-force cap.
    #[error("{n} variables exceeds the brute-force cap of {cap}")]
    ResourceLimit { n: usize, cap: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An internally checked identity did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
