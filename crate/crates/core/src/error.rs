use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: i64, found: i64 },

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("coefficient domains differ")]
    DomainMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus is not squarefree")]
    NotSquarefree,

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("period file: line {line}: {msg}")]
    PeriodFile { line: usize, msg: String },

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("no relation found: {0}")]
    NoRelation(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("root refinement left the isolation disk")]
    IsolationLost,

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
