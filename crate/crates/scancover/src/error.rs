use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] scancover_core::Error),
    #[error("schedule belongs to instance {found}, this instance hashes to {expected}")]
    HashMismatch { expected: String, found: String },
}

pub type Result<T> = std::result::Result<T, Error>;
