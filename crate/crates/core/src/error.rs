use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{what} out of supported range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("complex on [{0}] is not at least triparted")]
    NotTriparted(usize),
    #[error("Q and K overlap: P({0}) lies in Q")]
    Overlap(String),
    #[error("incompatible data on the 2-layer tree of {0}")]
    Incompatible(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
