//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("no target: power image carries no energy")]
    NoTarget,

    #[error("off-grid coordinates: {0}")]
    OffGrid(String),

    #[error("spectral grid mismatch: {0}")]
    GridMismatch(String),

    #[error("spectrum does not cover the {lo}-{hi} Hz band")]
    BandNotCovered { lo: f64, hi: f64 },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("unknown method id: {0}")]
    UnknownMethod(String),

    #[error("bad file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
