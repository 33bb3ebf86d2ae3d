use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("modulus mismatch: {0} vs {1}")]
    Modulus(u32, u32),

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("gcd of an all-zero family is undefined")]
    UndefinedGcd,

    #[error("defining system has only zero entries")]
    UndefinedSystem,

    #[error("index out of range: {0}")]
    Index(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("invalid frame: theta^p has nonzero coefficient of {witness} at entry ({row}, {col})")]
    InvalidFrame {
        witness: String,
        row: usize,
        col: usize,
    },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("unknown catalog entry: {0}")]
    Catalog(String),

    #[error("incompatible modules: {0}")]
    Compatibility(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("not a p-point: linear part vanishes")]
    NotAPPoint,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
