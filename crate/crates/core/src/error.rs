use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("game mismatch: {0}")]
    GameMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("position is not maximal in the game: {0}")]
    NotMaximal(String),
    #[error("search budget of {0} states exhausted")]
    BudgetExceeded(usize),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("not reversible: {0}")]
    NotReversible(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type error in `{node}`: {msg}")]
    Type { node: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
