use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("N must be a positive integer")]
    ZeroN,

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("configuration contains coincident points (indices {0} and {1}); energy is infinite")]
    CoincidentPoints(usize, usize),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("every sampled grid angle coincides with an existing point")]
    DegenerateGrid,

    #[error("grid of {grid} angles is too coarse for {points} points (need at least {min})")]
    GridTooCoarse { grid: usize, points: usize, min: usize },

    #[error("{kind} search requires {expected}, got s = {s}")]
    BoundMisuse { kind: &'static str, expected: &'static str, s: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
