use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while loading, comparing or classifying wordlists.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{source_label}: invalid UTF-8 on line {line}")]
    Encoding { source_label: String, line: usize },

    #[error("{source_label}:{line}: {message}")]
    Parse {
        source_label: String,
        line: usize,
        message: String,
    },

    #[error("{source_label}:{line}: unknown concept id {id}")]
    UnknownConcept {
        source_label: String,
        line: usize,
        id: u32,
    },

    #[error("invalid variety id {0:?}: must be non-empty and contain no whitespace")]
    InvalidVariety(String),

    #[error("invalid concept list: {0}")]
    InvalidConceptList(String),

    #[error("invalid column mapping: {0}")]
    InvalidColumns(String),

    #[error("unknown metric {name:?}; valid metrics are {{{valid}}}")]
    UnknownMetric { name: String, valid: String },

    #[error("unknown {kind} {value:?}; expected one of {{{valid}}}")]
    UnknownOption {
        kind: &'static str,
        value: String,
        valid: &'static str,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("duplicate variety {0}")]
    DuplicateVariety(String),

    #[error("at least two varieties are required, found {0}")]
    TooFewVarieties(usize),

    #[error("no overlapping concepts between {0} and {1}")]
    NoOverlap(String, String),

    #[error("wordlist {variety} was built against concept list {found:?}, expected {expected:?}")]
    ConceptListMismatch {
        variety: String,
        expected: String,
        found: String,
    },

    #[error("empty variant sequence")]
    EmptyVariants,

    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("count {count} exceeds denominator {denominator}")]
    CountExceedsDenominator { count: usize, denominator: usize },

    #[error("missing pair {0}-{1}")]
    MissingPair(String, String),

    #[error("duplicate pair {0}-{1}")]
    DuplicatePair(String, String),

    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
}

impl Error {
    /// Process exit status for this error: 2 for input and parse problems,
    /// 1 for validation and analysis problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. }
            | Error::Encoding { .. }
            | Error::Parse { .. }
            | Error::InvalidColumns(_)
            | Error::InvalidConceptList(_)
            | Error::InvalidMatrix(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
