use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("row {line}: expected {expected} fields, got {got}")]
    Ragged {
        line: u64,
        expected: usize,
        got: usize,
    },

    #[error("row {row}, column {col}: cannot parse {value:?} as a number")]
    NotNumeric { row: u64, col: usize, value: String },

    #[error("row {index} ({name:?}) has no present values")]
    EmptyRow { index: usize, name: String },

    #[error("row {index} ({name:?}) has zero norm")]
    ZeroNorm { index: usize, name: String },

    #[error("{0} does not accept missing values")]
    MissingValues(&'static str),

    #[error("k = {k} is out of range for {n} objects (need {min} <= k <= {n})")]
    ClusterCount { k: usize, n: usize, min: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
