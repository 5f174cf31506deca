use thiserror::Error;

/// Errors raised by the kernel and the physics layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid integration measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("unsupported operand: {0}")]
    UnsupportedOperand(String),

    #[error("soul is not nilpotent")]
    NotNilpotent,

    #[error("derivative of order {order} unavailable at the body")]
    NonDifferentiable { order: usize },

    #[error("coefficient ring cannot represent {0}")]
    NotRepresentable(&'static str),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("analytic and empirical routes disagree: {0}")]
    Inconsistent(String),

    #[error("invalid test function `{name}`: {reason}")]
    InvalidTestFunction { name: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
