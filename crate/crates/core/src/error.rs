use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite amplitude component")]
    NonFinite,

    #[error("probability {0} outside the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error("mixture weights must be positive and sum to 1 (sum = {0})")]
    InvalidWeights(f64),

    #[error("mixture must contain at least one element")]
    EmptyMixture,

    #[error("coinciding amplitudes: the state is not a mixture")]
    DegenerateMixture,

    #[error("amplitude {index} of the mixture is not part of the basis")]
    BasisMismatch { index: usize },

    #[error("matrix is not a density matrix: {0}")]
    NotAState(String),

    #[error("dimension {dim} exceeds the supported maximum {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("mode-A subspace has dimension {0}; only binary mixtures are supported")]
    UnsupportedDimension(usize),

    #[error("expected a two-element mixture, got {0} elements")]
    UnsupportedMixtureSize(usize),

    #[error("homodyne bound is only defined for a = 1/2 (got a = {0})")]
    HomodyneWeight(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
