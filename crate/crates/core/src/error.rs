use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An element id or budget outside its valid range.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or insufficient input data.
    #[error("input error: {0}")]
    Input(String),
    /// An exact enumeration would exceed the configured work cap.
    #[error("instance too large for exact enumeration: {work} evaluations exceeds cap {cap}")]
    Sizing { work: u128, cap: u128 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
