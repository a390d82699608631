//! Library error types.

use thiserror::Error;

/// Errors surfaced by configuration, ingestion, and pipeline code.
///
/// Per-row data problems are not errors: they are collected as
/// [`crate::ingest::RowError`] values and only become fatal when their
/// rate exceeds the configured cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("config: {0}")]
    Config(String),

    #[error("missing column: {0}")]
    MissingColumn(String),

    #[error("row error rate {rate:.4} exceeds cap {cap:.4} ({n_errors} of {n_rows} rows)")]
    TooManyRowErrors {
        n_errors: usize,
        n_rows: usize,
        rate: f64,
        cap: f64,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
