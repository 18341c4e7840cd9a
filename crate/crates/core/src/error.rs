use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("{0} vertices exceed the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("rays of cone {cone} are linearly dependent")]
    DependentCone { cone: usize },
    #[error("cone is not a face of the fan")]
    ConeNotInFan,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exterior generator index {index} exceeds rank {rank}")]
    RankMismatch { index: usize, rank: usize },
    #[error("composite differential is nonzero")]
    CompositionNotZero,
    #[error("canonical product mode needs 2 to be invertible in {0}")]
    CanonicalModeNeedsHalf(crate::ring::Coefficients),
    #[error("element is not a cocycle")]
    NotACocycle,
    #[error("element is not homogeneous in total degree")]
    NotHomogeneous,
    #[error("total degree {degree} exceeds the truncation bound {bound}")]
    DegreeOutOfRange { degree: i64, bound: usize },
    #[error("characteristic matrix is not the identity (moment-angle case required)")]
    NotMomentAngleCase,
    #[error("estimated chain dimension {estimate} exceeds the bound {bound}")]
    TooLarge { estimate: u128, bound: u128 },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}
