use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree {degree} out of range (complex dimension {dim})")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("operands live on different complexes, degrees or moduli")]
    ContextMismatch,
    #[error("modulus {divisor} does not divide source modulus {modulus}")]
    NonDividingModulus { divisor: u64, modulus: u64 },
    #[error("operation requires modulus {expected}, found {found}")]
    WrongModulus { expected: u64, found: u64 },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("invalid simplex: {0}")]
    InvalidSimplex(&'static str),
    #[error("simplex dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(&'static str),
    #[error("invalid map: {0}")]
    InvalidMap(&'static str),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(&'static str),
    #[error("invalid group data: {0}")]
    InvalidGroup(&'static str),
    #[error("search space of size {size} exceeds cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("parse error: {0}")]
    Parse(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
