use thiserror::Error;

/// Errors raised by the algebra, calculus and prequantization layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {0} is not invertible (more than one power of T)")]
    NotInvertible(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("negative exponent outside the divisor coordinates: {0}")]
    NotInArena(String),
    #[error("not logarithmic: {0}")]
    NotLogarithmic(String),
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("degenerate 2-form: determinant {0}")]
    Degenerate(String),
    #[error("odd dimension {0}: a log symplectic chart needs an even number of variables")]
    OddDimension(usize),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("malformed log form: {0}")]
    Malformed(String),
    #[error("residue cannot be normalized: {0}")]
    NotNormalizable(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
