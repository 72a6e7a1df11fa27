use thiserror::Error;

/// Errors raised by the calculus. All of them are domain errors: the input
/// describes something that is not a valid calculus or exceeds the degree cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence is not admissible: {0}")]
    NotAdmissible(String),
    #[error("index {index} out of range (cap {cap})")]
    OutOfRange { index: usize, cap: usize },
    #[error("invalid basic sequence: {0}")]
    InvalidBasis(String),
    #[error("cap mismatch: {0}")]
    CapMismatch(String),
    #[error("degree {degree} exceeds the allowed maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("order {order} needs cap at least {needed}, context cap is {cap}")]
    OrderOverflow { order: usize, needed: usize, cap: usize },
    #[error("operator is not degree-lowering: {0}")]
    NotDegreeLowering(String),
    #[error("triangular system is singular: {0}")]
    Unsolvable(String),
    #[error("singular parameter: {0}")]
    SingularParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
