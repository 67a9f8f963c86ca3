use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("bound not certified, increase N: {0}")]
    NilpotencyNotCertified(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modules over different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("construction does not apply: {0}")]
    NotApplicable(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
