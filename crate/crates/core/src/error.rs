use thiserror::Error;

/// Errors raised by constructors and measures in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty product")]
    EmptyProduct,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid party selection: {0}")]
    InvalidParties(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("input has rank zero")]
    RankZero,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("malformed state file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
