use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {name} = {value} outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid order-statistic indices i = {i}, j = {j}, k = {k} (need 1 <= i < j <= k)")]
    Index { i: usize, j: usize, k: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("sample of size {n} is too small: {what} needs at least {required}")]
    InsufficientSample {
        n: usize,
        required: usize,
        what: &'static str,
    },

    #[error("zero scale: {0}")]
    ZeroScale(&'static str),

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("variable {id}: {source}")]
    Variable {
        id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown statistic `{name}` (available: {available})")]
    UnknownStatistic { name: String, available: String },

    #[error("gene set `{0}` does not intersect the ranked list")]
    EmptyIntersection(String),

    #[error("gene set `{0}` covers the whole ranked list; the miss probability is undefined")]
    DegenerateGeneSet(String),

    #[error("k = {k} exceeds the {len} available entries")]
    KTooLarge { k: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cache file {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }

    /// Attaches a variable identifier to the error.
    pub fn for_variable(self, id: impl Into<String>) -> Self {
        Error::Variable {
            id: id.into(),
            source: Box::new(self),
        }
    }
}
