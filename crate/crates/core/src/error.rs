use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("{0} is not an odd prime")]
    BadPrime(u64),

    #[error("precision must be at least 1 (got {0})")]
    BadPrecision(i64),

    #[error("zero divide at precision {precision}")]
    ZeroDivide { precision: i64 },

    #[error("cannot embed level {from} into lower level {to}")]
    UnsupportedEmbedding { from: u32, to: u32 },

    #[error("degree overflow: product degree ({dx}, {dy}) exceeds {limit} with no caps set")]
    DegreeOverflow { dx: usize, dy: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("determinant not a unit")]
    DeterminantNotUnit,

    #[error("matrix is not block anti-diagonal")]
    NotBlockAntiDiagonal,

    #[error("change of basis is not block diagonal")]
    NotBlockDiagonal,

    #[error("malformed index set: {0}")]
    BadIndexSet(String),

    #[error("invalid character point: {0}")]
    BadCharacter(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
