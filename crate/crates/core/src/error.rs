use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("negative radicand {0}")]
    NegativeRadicand(String),

    #[error("incompatible radicands {0} and {1}")]
    IncompatibleRadicands(String, String),

    #[error("factorial of negative number {0}")]
    NegativeFactorial(i64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
