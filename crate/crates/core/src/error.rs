use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("second vector is not majorized by the first")]
    NotMajorized,

    #[error("matrix does not rebalance the allocation to equal weights")]
    NotInPolytope,

    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid T-transform: {0}")]
    InvalidTransform(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
