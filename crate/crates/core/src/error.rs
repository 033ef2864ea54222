//! Error type shared by every module in the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },

    #[error("line {line}, column '{column}': cannot parse '{value}' as a number")]
    BadCell {
        line: usize,
        column: String,
        value: String,
    },

    #[error("line {line}, column '{column}': non-finite value '{value}'")]
    NonFinite {
        line: usize,
        column: String,
        value: String,
    },

    #[error("label column '{column}' has {found} distinct values, expected exactly 2")]
    LabelCardinality { column: String, found: usize },

    #[error("invalid dataset: {0}")]
    InvalidData(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("expected {expected} columns, got {got}")]
    ColumnMismatch { expected: usize, got: usize },

    #[error("training data must contain both classes")]
    SingleClass,

    #[error("class {class} has {count} members, need at least {min} for {min} folds")]
    ClassTooSmall { class: u8, count: usize, min: usize },

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("grid search: every grid point failed; first error: {0}")]
    GridExhausted(#[source] Box<Error>),

    #[error("matrix is not positive definite (pivot {pivot} at index {index})")]
    NotPositiveDefinite { pivot: f64, index: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wraps an error with the index of the cross-validation fold it occurred in.
    pub fn in_fold(self, fold: usize) -> Error {
        Error::Fold {
            fold,
            source: Box::new(self),
        }
    }
}
