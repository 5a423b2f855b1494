use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: malformed row: {message}")]
    MalformedRow {
        file: String,
        line: u64,
        message: String,
    },

    #[error("{file}: missing or unexpected header, expected `{expected}`")]
    BadHeader { file: String, expected: String },

    #[error("duplicate subject category id `{0}`")]
    DuplicateCategory(String),

    #[error("duplicate journal id `{0}`")]
    DuplicateJournal(String),

    #[error("journal without SC: `{journal}` (line {line})")]
    JournalWithoutCategory { journal: String, line: u64 },

    #[error("journal `{journal}` lists subject category `{sc}` twice")]
    DuplicateMembership { journal: String, sc: String },

    #[error("journal `{journal}` references unknown subject category `{sc}`")]
    UnknownCategory { journal: String, sc: String },

    #[error("{file}:{line}: unknown journal id `{journal}`")]
    UnknownJournalRef {
        file: String,
        line: u64,
        journal: String,
    },

    #[error("{file}:{line}: negative citation count {count}")]
    NegativeCount { file: String, line: u64, count: i64 },

    #[error("{file}:{line}: unparseable dimension `{value}` (expected CITED or CITING)")]
    BadDimension {
        file: String,
        line: u64,
        value: String,
    },

    #[error("unknown journal `{0}`")]
    UnknownJournal(String),

    #[error("unknown subject category `{0}`")]
    UnknownSubjectCategory(String),

    #[error("journal `{journal}` is not classified in `{sc}`")]
    NotAMember { journal: String, sc: String },

    #[error("n_categories must be at least {min}, got {got}")]
    InvalidCategoryCount { got: usize, min: usize },

    #[error("no citations in dimension {dimension} for `{unit}` in `{sc}`")]
    NoCitations {
        unit: String,
        sc: String,
        dimension: crate::corpus::Dimension,
    },

    #[error("cannot take the median of an empty list")]
    EmptyValues,

    #[error("need at least 2 scored units to split at the median, got {0}")]
    TooFewUnits(usize),

    #[error("metric series `{0}` is constant over the overlapping units")]
    ConstantSeries(String),

    #[error("only {got} overlapping units between `{x}` and `{y}` (need 3)")]
    InsufficientOverlap { x: String, y: String, got: usize },

    #[error("metric series `{series}` has duplicate unit `{unit}`")]
    DuplicateUnit { series: String, unit: String },

    #[error("metric series `{series}` has non-finite value for `{unit}`")]
    NonFinite { series: String, unit: String },

    #[error("top_k must be at least 1")]
    InvalidTopK,

    #[error("{0}")]
    Config(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status: 1 for input or validation problems, 2 for
    /// internal arithmetic failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Arithmetic(_) => 2,
            _ => 1,
        }
    }
}
