use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("not invertible")]
    NotInvertible,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid ideal descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("out of oracle range: {0}")]
    OutOfOracleRange(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("classification violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
