use alloc::string::String;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("degree {degree} exceeds the configured degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("unit must be basis element 0: {0}")]
    NotUnital(String),
    #[error("multiplication table is not associative at (e{0}*e{1})*e{2}")]
    NotAssociative(usize, usize, usize),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("not an algebra homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("connection potential is not compressed by its idempotent")]
    NotCompressed,
    #[error("invalid module isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("paths do not share endpoints")]
    EndpointMismatch,
    #[error("idempotents differ")]
    IdempotentMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
