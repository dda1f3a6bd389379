use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operation supports only {supported} matrices, got {rows}x{cols}")]
    UnsupportedSize {
        supported: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix or basis is singular")]
    Singular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("input vector is not a unit vector (|norm^2 - 1| = {deviation:e})")]
    NotUnit { deviation: f64 },

    #[error("inner product vanishes; the argument is undefined")]
    Orthogonal,

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has a repeated eigenvalue and is not a scalar matrix")]
    RepeatedEigenvalue,

    #[error("matrix has a zero eigenvalue")]
    ZeroEigenvalue,

    #[error("root of unity of order {order} is not available in conductor {conductor}")]
    RootNotInField { order: u32, conductor: u32 },

    #[error("sqrt({m}) is not supported in conductor {conductor}")]
    UnsupportedRadical { m: u64, conductor: u32 },

    #[error("value {value} has no exact representation: {reason}")]
    NotRepresentable { value: f64, reason: &'static str },

    #[error("invalid conductor {0}")]
    InvalidConductor(u32),

    #[error("expected {expected} vectors, found {found}")]
    WrongCardinality { expected: usize, found: usize },

    #[error("squared norm {value} is not an integer")]
    NonIntegralNorm { value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction failed verification: max violation {max_violation:e}")]
    VerificationFailed { max_violation: f64 },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("file format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
