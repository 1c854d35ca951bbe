use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypError {
    /// A point lies outside the set an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// Parameters of a domain, chain or construction are inconsistent.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    /// The operation has no implementation for this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("empty fit window: {0}")]
    EmptyWindow(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = HypError> = std::result::Result<T, E>;

impl HypError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        HypError::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        HypError::InvalidSpec(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        HypError::Unsupported(msg.into())
    }
}
