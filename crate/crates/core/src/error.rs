use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured size limit was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A numeric precondition (e.g. strict positivity) does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument does not satisfy a documented contract.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(format!("line {}, column {}: {}", err.line(), err.column(), err))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
