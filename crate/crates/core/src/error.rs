//! Crate-wide error type.

use thiserror::Error;

/// Broad class of a failure, used by callers (e.g. the CLI) to map errors
/// onto exit codes without matching every variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or out-of-range input.
    Input,
    /// A documented precondition was violated by the caller.
    Contract,
    /// A configurable state or word budget was exhausted.
    Resource,
    /// An internal consistency check failed. These signal a bug (or a wrong
    /// tie-break rule), never bad user input.
    Integrity,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation size {n} exceeds the configured maximum {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("column index {c} out of range for size {n}")]
    ColumnOutOfRange { c: usize, n: usize },

    #[error("word letter {letter} must be at most {max}")]
    LetterOutOfRange { letter: usize, max: usize },

    #[error("word is not reduced")]
    NotReduced,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid compatible pair: {0}")]
    IncompatiblePair(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram rows exceed the supported packing limit of {limit}")]
    RowLimit { limit: usize },

    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("columns {c} and {next} are not ordered by inclusion", next = c + 1)]
    ColumnsNotNested { c: usize },

    #[error("target diagram is not reachable from the base by Kohnert moves")]
    NotInClosure,

    #[error("integrity violation: {0}")]
    Integrity(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidPermutation(_)
            | Error::SizeLimit { .. }
            | Error::ColumnOutOfRange { .. }
            | Error::LetterOutOfRange { .. }
            | Error::NotReduced
            | Error::InvalidWord(_)
            | Error::IncompatiblePair(_)
            | Error::InvalidDiagram(_)
            | Error::RowLimit { .. } => ErrorClass::Input,
            Error::ColumnsNotNested { .. } | Error::NotInClosure => ErrorClass::Contract,
            Error::BudgetExceeded { .. } => ErrorClass::Resource,
            Error::Integrity(_) => ErrorClass::Integrity,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
