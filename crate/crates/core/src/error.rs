use thiserror::Error;

/// Errors raised by space constructors and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point, label or element outside the relevant universe.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid input (not a subgroup, broken cocycle, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Bad norm exponent or weight.
    #[error("invalid norm spec: {0}")]
    InvalidSpec(String),
    /// Malformed text in a file format or point literal.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
