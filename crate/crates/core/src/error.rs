use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter {value} outside domain [{lo}, {hi}]")]
    ParameterDomain { value: f64, lo: f64, hi: f64 },

    #[error("trajectory needs at least two distinct vertices")]
    DegenerateTrajectory,

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("zero-length segment")]
    ZeroLengthSegment,

    #[error("curve never leaves the ball")]
    NoExit,

    #[error("structural error: {0}")]
    Structural(String),

    #[error("instance too large for the exhaustive oracle ({n} vertices, limit {limit})")]
    GuardExceeded { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
