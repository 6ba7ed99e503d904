use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a precondition (arity mismatch, element outside the
    /// active set, ground set too large, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed interchange data.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
