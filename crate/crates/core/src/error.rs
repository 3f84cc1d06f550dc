use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A truncation bound is too small to determine the requested value.
    #[error("truncation error: {0}")]
    Truncation(String),
    /// Too few variables to realize a symmetric function faithfully.
    #[error("faithfulness error: {0}")]
    Faithfulness(String),
    /// A structural invariant failed; this indicates a bug or a false statement.
    #[error("internal error: {0}")]
    Internal(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
