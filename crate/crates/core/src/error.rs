use thiserror::Error;

/// Library-wide error type. `Domain` covers precondition violations (exit
/// code 2 at the CLI), the remaining numerical variants map to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("numerical consistency failure: {0}")]
    Numerical(String),

    #[error("requested accuracy unreachable: {0}")]
    Accuracy(String),

    #[error("argument tracking failed: {0}")]
    Tracking(String),

    #[error("missing zeros: {0}")]
    MissingZeros(String),

    #[error("zero cache miss: {0}")]
    CacheMiss(String),

    #[error("cache format: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
