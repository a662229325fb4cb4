use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("unsupported arity {arity} (arity cap is {cap})")]
    UnsupportedArity { arity: usize, cap: usize },

    #[error("kind error: {0}")]
    Kind(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("series did not terminate within {bound} iterations")]
    Divergence { bound: usize },

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("weight error: {0}")]
    Weight(String),
}

pub type Result<T> = std::result::Result<T, Error>;
