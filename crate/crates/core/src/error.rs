use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = HoiError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HoiError {
    /// A cell that is not a finite decimal number. Row and column are
    /// zero-based positions in the file, header row included.
    #[error("parse error at row {row}, column {col}: {cell:?} is not a finite number")]
    Parse { row: usize, col: usize, cell: String },

    #[error("ragged row {row}: expected {expected} cells, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("input contains no data rows")]
    EmptyInput,

    #[error("channel {0} is constant and cannot be standardized")]
    DegenerateChannel(usize),

    #[error("at least 2 samples are required, got {0}")]
    TooFewSamples(usize),

    #[error("at least {required} channels are required, got {found}")]
    TooFewChannels { required: usize, found: usize },

    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("covariance is singular or not positive definite")]
    SingularCovariance,

    #[error("format error: {0}")]
    Format(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HoiError {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HoiError::File {
            path: path.into(),
            source,
        }
    }
}
