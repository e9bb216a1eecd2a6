use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QsgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("zero input where a nonzero value is required: {0}")]
    ZeroInput(&'static str),
    #[error("inputs are linearly dependent")]
    DependentInputs,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, QsgError>;

impl From<std::io::Error> for QsgError {
    fn from(e: std::io::Error) -> Self {
        QsgError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for QsgError {
    fn from(e: serde_json::Error) -> Self {
        QsgError::Parse(e.to_string())
    }
}
