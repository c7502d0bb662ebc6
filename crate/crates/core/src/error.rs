use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent {value} out of range: {expected}")]
    ExponentOutOfRange { value: f64, expected: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence must contain at least one coefficient")]
    EmptySequence,

    #[error("sequence is identically zero")]
    ZeroSequence,

    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: i64 },

    #[error("re and im have different lengths ({re} vs {im})")]
    LengthMismatch { re: usize, im: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
