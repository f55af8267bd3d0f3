use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed space: {0}")]
    MalformedSpace(String),
    #[error("map has {got} entries but the space has {expected} points")]
    MapSizeMismatch { expected: usize, got: usize },
    #[error("map sends point {point} to {image}, which is not a point of the space")]
    ImageOutOfRange { point: usize, image: usize },
    #[error("point index {0} is out of range")]
    PointOutOfRange(usize),
    #[error("truncation N = {0} is too small (need N >= 5)")]
    TruncationTooSmall(u32),
    #[error("search over {points}! maps exceeds the budget of {budget} points")]
    SearchSpaceTooLarge { points: usize, budget: usize },
    #[error("lambda {0} is outside [0, 1/2)")]
    LambdaOutOfRange(Rational),
    #[error("trajectory needs at least two points for bound checks")]
    TrajectoryTooShort,
    #[error("max_iter must be at least 1")]
    ZeroIterations,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
