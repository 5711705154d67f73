use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("production angle {0} rad is outside [0, π/2]")]
    AngleOutOfDomain(f64),

    #[error("concurrence {0} is outside [0, 1]")]
    ConcurrenceOutOfRange(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("operator is not unitary (defect {0:e})")]
    NotUnitary(f64),

    #[error("probability {value:e} for outcome {outcome} is negative beyond rounding")]
    NegativeProbability { outcome: &'static str, value: f64 },

    #[error("joint distribution sums to {0}, expected 1")]
    DistributionSum(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
