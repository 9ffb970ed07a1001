use std::path::PathBuf;

/// Errors produced by the rate-region toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported alphabet: {0}")]
    UnsupportedAlphabet(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no very-strong-interference threshold found up to |h| = {upper}")]
    NoThresholdFound { upper: f64 },

    #[error("cannot write output {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
