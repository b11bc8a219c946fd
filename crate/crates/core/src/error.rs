use thiserror::Error;

use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("bad field: {0}")]
    BadField(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace is not contained in the ambient subspace")]
    SubspaceNotContained,

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid relation on line {line}: {message}")]
    InvalidRelation { line: usize, message: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("map is not a derivation: {0}")]
    NotADerivation(String),

    #[error("algebra has a loop at vertex {0}")]
    HasLoops(usize),

    #[error("operation requires a prime field")]
    NotPrimeField,

    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),

    #[error("operation requires positive characteristic")]
    WrongCharacteristic,

    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("algebra carries no quiver presentation")]
    NotQuiverPresented,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
