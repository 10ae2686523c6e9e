use crate::scalar::Field;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("index ({row}, {col}) out of range for size {size}")]
    IndexOutOfRange { row: u64, col: u64, size: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix size {0} is not a power of two")]
    NonDyadicSize(usize),
    #[error("matrix size {0} is odd")]
    OddSize(usize),
    #[error("element is not diagonal")]
    NotDiagonal,
    #[error("element is not convergent")]
    NotConvergent,
    #[error("matrix at level {0} is singular")]
    SingularAtLevel(usize),
    #[error("leading principal minor of size {0} vanishes")]
    SingularMinorAt(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("insufficient data: level {needed} needed, {available} available")]
    InsufficientData { needed: usize, available: usize },
    #[error("validation mismatch at level {level}, entry ({row}, {col})")]
    ValidationMismatch { level: usize, row: usize, col: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("singular specialization: {0}")]
    SingularSpecialization(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported root of unity order {0}")]
    UnsupportedOrder(u32),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
