use thiserror::Error;

/// Library-wide error type.
///
/// `Validation` means the input was malformed or outside a guard (CLI exit
/// code 1). `Verification` means a mathematical identity that was asked to be
/// checked does not hold (CLI exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn verification(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}
