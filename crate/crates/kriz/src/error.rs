//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KrizError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ring invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unknown ring preset: {0}")]
    UnknownPreset(String),

    #[error("index out of range: {0}")]
    IndexError(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("element is not homogeneous of a single bidegree")]
    Inhomogeneous,

    #[error("not a genuine character: {0}")]
    NotACharacter(String),

    #[error("induced character value is not rational: {0}")]
    NonRationalInduced(String),

    #[error("one-dimensional character is not multiplicative on its group")]
    NonMultiplicativeCharacter,

    #[error("action leaves the basis span: {0}")]
    LeavesSpan(String),

    #[error("subspace is not invariant under the given action")]
    SubspaceNotInvariant,

    #[error("subcomplex classifier collision: {0}")]
    ClassifierCollision(String),

    #[error("pairing matrix singular in degree {0}")]
    SingularPairing(usize),
}
