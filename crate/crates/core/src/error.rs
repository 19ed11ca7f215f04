use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("series with zero constant term is not invertible")]
    NotInvertible,

    #[error("not a W-word: {0}")]
    NotWWord(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("outside convergence domain: {0}")]
    Domain(String),

    #[error("pathway mismatch for {word} at q^{degree}: direct sum {direct}, jackson {jackson}")]
    PathwayMismatch {
        word: String,
        degree: usize,
        direct: String,
        jackson: String,
    },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
