use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("word length {0} is odd; balancing needs even n")]
    OddLength(usize),

    #[error("{what} exceeds the cap ({detail})")]
    CapExceeded { what: &'static str, detail: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("components of the direct sum intersect nontrivially (rank {stacked} < {expected})")]
    NontrivialIntersection { stacked: usize, expected: usize },

    #[error(
        "no word of the balancing component balances this codeword; replace the balancing code"
    )]
    BalancingFailed,

    #[error("decoding failed: no candidate within the component decoder radius")]
    DecodeFailure,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap(what: &'static str, detail: impl Into<String>) -> Error {
    Error::CapExceeded {
        what,
        detail: detail.into(),
    }
}
