use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one component")]
    Empty,
    #[error("component {index} is negative ({value})")]
    Negative { index: usize, value: f64 },
    #[error("component {index} is not finite")]
    NonFinite { index: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gap undefined: both vectors contain zeros and r <= 0 (normalize the pair first)")]
    UndefinedGap,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("totals differ: {left} vs {right}")]
    UnequalTotals { left: f64, right: f64 },
    #[error("x is not majorized by y")]
    NotMajorized,
    #[error("component {index} is not an integer")]
    NotInteger { index: usize },
    #[error("x is not in P(y): {0}")]
    NotInP(String),
}

pub type Result<T> = std::result::Result<T, Error>;
