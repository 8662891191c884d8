use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("need at least {degree} + 1 control points, got {count}")]
    TooFewControlPoints { count: usize, degree: usize },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("basis index {index} out of range (max {max})")]
    BasisIndexOutOfRange { index: usize, max: usize },

    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("polyline needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("negative distance {0}")]
    NegativeDistance(f64),

    #[error("ground truth has zero length")]
    ZeroLengthGroundTruth,

    #[error("zero-length segment at index {0}")]
    DegenerateSegment(usize),

    #[error("least-squares fit failed: {0}")]
    FitFailed(String),

    #[error("gradient descent diverged at step {step}: loss {loss} exceeds 10x initial {initial}")]
    Diverged { step: usize, loss: f64, initial: f64 },

    #[error("reference point count {0} is not a positive multiple of 4")]
    ReferenceCount(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
