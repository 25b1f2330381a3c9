use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("no samples to interpolate")]
    EmptySamples,

    #[error("duplicate interpolation abscissa k = {0}")]
    DuplicateAbscissa(i64),

    #[error("polynomial of degree {degree} does not fit reference degree {d}")]
    DegreeTooLarge { degree: usize, d: usize },

    #[error("h-vector must have entry 0 equal to 1")]
    HVectorNormalization,

    #[error("malformed coefficient vector: {0}")]
    MalformedVector(String),

    #[error("{what}: index {index} out of range for n = {n}")]
    OutOfRange { what: &'static str, n: i64, index: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown polynomial family {0:?}")]
    UnknownFamily(String),

    #[error("unknown graph spec {0:?}")]
    UnknownGraphSpec(String),

    #[error("enumeration guard exceeded for {what}: {candidates} candidates > limit {limit}")]
    GuardExceeded {
        what: String,
        candidates: u128,
        limit: u128,
    },

    #[error("polytope is unbounded: coordinate {0} has no box rows")]
    Unbounded(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polytope is not full-dimensional")]
    LowerDimensional,

    #[error("fitted polynomial disagrees with the extra sample at k = {k}: expected {expected}, counted {counted}")]
    ExtraSampleMismatch {
        k: i64,
        expected: String,
        counted: String,
    },

    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
