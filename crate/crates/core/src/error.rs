//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural misconfiguration: incompatible dimensions, invalid
    /// hyperparameters, malformed checkpoints.
    #[error("configuration error: {0}")]
    Config(String),

    /// Bad input data. `row` is the 1-based line number when the problem
    /// comes from a specific record of an input file.
    #[error("data error{}: {message}", row.map(|r| format!(" (row {r})")).unwrap_or_default())]
    Data {
        row: Option<usize>,
        message: String,
    },

    /// API misuse: mismatched shapes, stale tapes, out-of-range indices.
    #[error("usage error: {0}")]
    Usage(String),

    /// Numerical failure while training (non-finite gradients or outputs).
    #[error("training error: {0}")]
    Training(String),

    /// The training loop produced a non-finite loss. Carries the most recent
    /// healthy model state so callers can persist it before giving up.
    #[error("training diverged at iteration {iteration}")]
    Diverged {
        iteration: usize,
        last_good: Box<crate::invase::TrainedModel>,
    },

    /// A metric that is undefined for the given inputs (e.g. AUC-ROC with a
    /// single class present).
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
