//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometry, subdivision, quadrature and verification.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty coordinate list")]
    EmptyVector,

    #[error("non-finite coordinate {value} at index {index}")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("simplex with {vertices} vertices cannot be embedded in dimension {ambient}")]
    TooManyVertices { vertices: usize, ambient: usize },

    #[error("degenerate simplex: gram determinant {gram:.3e} below threshold {threshold:.3e}")]
    DegenerateSimplex { gram: f64, threshold: f64 },

    #[error("vertex index {index} out of range for {count} vertices")]
    VertexIndexOutOfRange { index: usize, count: usize },

    #[error("invalid subset: {reason}")]
    InvalidSubset { reason: String },

    #[error("subset selects every vertex; no family member remains")]
    SubsetExhaustsVertices,

    #[error("index {index} is not in the complement of the subset")]
    NotInComplement { index: usize },

    #[error("subdivision level would hold {requested} members, cap is {cap}")]
    LevelCapExceeded { requested: u128, cap: usize },

    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    #[error("exact quadrature requires a polynomial form, function {name} has none")]
    ExactRequiresPolynomial { name: String },

    #[error("non-finite evaluation {value} at point {point:?}")]
    NonFiniteEvaluation { point: Vec<f64>, value: f64 },

    #[error("need at least {min} samples, got {got}")]
    InsufficientSamples { got: u64, min: u64 },

    #[error("invalid chain: {reason}")]
    InvalidChain { reason: String },

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
