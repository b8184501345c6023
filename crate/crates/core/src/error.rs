use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("unsupported prime p = {p}: {reason}")]
    UnsupportedPrime { p: u32, reason: String },

    #[error("{0}")]
    Usage(String),

    /// The request is too large for exact enumeration.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("verification failure: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_mismatch(what: &str, expected: usize, got: usize) -> Error {
    Error::Usage(format!("{what}: expected dimension {expected}, got {got}"))
}
