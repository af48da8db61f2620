use thiserror::Error;

/// Errors raised by frame construction and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },
    #[error("input contains a non-finite value")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("simplex iteration limit {limit} exceeded")]
    IterationLimit { limit: usize },
    #[error("vectors do not span R^{n} (rank {rank})")]
    NotSpanning { n: usize, rank: usize },
    #[error("frame vector {index} is zero")]
    ZeroVector { index: usize },
    #[error("dimension {n} too small; need n >= 2")]
    DimensionTooSmall { n: usize },
    #[error("vector {index} has norm {norm}, expected unit norm")]
    NotUnitNorm { index: usize, norm: f64 },
    #[error("rank hypothesis violated: expected corank {expected}, measured corank {found}")]
    CorankMismatch { expected: usize, found: usize },
    #[error("completion vectors together with the selected rows do not reach full rank")]
    DependentCompletion,
    #[error("W is empty: no weights normalize every synthesis row")]
    EmptyW,
    #[error("weights do not produce a Parseval frame (deviation {deviation:e})")]
    NotParsevalScaling { deviation: f64 },
    #[error("transform is singular")]
    SingularTransform,
    #[error("no Hadamard matrix of order {order} available (Sylvester orders are powers of two)")]
    NoHadamardAvailable { order: usize },
    #[error("weights must be finite and non-negative")]
    InvalidWeights,
    #[error("empty input")]
    Empty,
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
