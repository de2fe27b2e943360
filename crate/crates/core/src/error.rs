use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("codomain split into (C, B) not supplied or inconsistent: {0}")]
    MissingFactorSplit(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("map is not completely positive (min eigenvalue {0:e})")]
    NotCompletelyPositive(f64),

    #[error("domain is not the tensor unit: {0}")]
    DomainNotUnit(String),
}

pub type CatResult<T> = Result<T, CatError>;
