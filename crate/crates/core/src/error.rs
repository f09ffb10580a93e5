use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown letter, bad picture shape, bad file.
    #[error("input error: {0}")]
    Input(String),
    /// An operation was called on an object outside the class it needs.
    #[error("class error: {0}")]
    Class(String),
    /// A conversion precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fresh symbol {0:?} already occurs in an input alphabet")]
    FreshSymbol(String),
    /// A construction outgrew the configured bound.
    #[error("limit exceeded: {0}")]
    Limit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
