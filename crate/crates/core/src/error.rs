use thiserror::Error;

/// Errors raised by the exact index machinery and the counting pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("rotation angle out of range (need 0 < theta/pi < 2): {0}")]
    AngleOutOfRange(String),

    #[error("cannot combine surds with distinct radicands {0} and {1}")]
    MixedRadicands(String, String),

    #[error("interval evaluation did not separate the value from its decision point at {0} bits")]
    PrecisionExhausted(u32),

    #[error("value does not fit the integer backend")]
    Overflow,

    #[error("invalid normal form block: {0}")]
    InvalidBlock(String),

    #[error("angle {0} is rational; the bumpy iteration formula needs irrational angles")]
    RationalAngle(String),

    #[error("mean index of {0} is not positive")]
    NonPositiveMeanIndex(String),

    #[error("invalid selection problem: {0}")]
    InvalidProblem(String),

    #[error("no admissible N up to {bound}; closest approach {best_residual:.3e} at N = {best_n}")]
    NotFoundWithinBound {
        bound: u64,
        best_n: u64,
        best_residual: f64,
    },

    #[error(
        "tuple verification failed for path {path}, m = {m}, {equation}: lhs {lhs} != rhs {rhs}"
    )]
    Verification {
        path: usize,
        m: i64,
        equation: String,
        lhs: String,
        rhs: String,
    },

    #[error("hypothesis rejected: {0}")]
    Hypothesis(String),

    #[error("l = {l} is below the admissible range l >= {min}")]
    PartialSumRange { l: u64, min: u64 },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("unknown record: {0}")]
    UnknownRecord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
