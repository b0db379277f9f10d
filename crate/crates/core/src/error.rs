use thiserror::Error;

/// Errors raised across the library.
///
/// Variants mirror the failure modes of the individual operations; most
/// callers only need to match on a handful of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("series is not divisible by y: term with y-exponent 0 present")]
    NotDivisible,

    #[error("no square root: {0}")]
    NoSquareRoot(String),

    #[error("series is not invertible: zero constant term")]
    NotInvertible,

    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndex { index: usize, num_vars: usize },

    #[error("not a stretching germ: {0}")]
    NotAGerm(String),

    #[error("vector field is not tangent to the boundary: {0}")]
    NotTangent(String),

    #[error("vector field is not tangent to the unit sphere: {0}")]
    NotSphereTangent(String),

    #[error("sample point out of range: {0}")]
    SampleOutOfRange(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("bracket leaves the span of the basis: {0}")]
    NotClosed(String),

    #[error("basis is linearly dependent")]
    LinearDependence,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
