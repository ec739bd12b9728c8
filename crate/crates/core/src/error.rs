use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("vocabulary of {size} atoms exceeds the enumeration cap of {cap}")]
    VocabularyTooLarge { size: usize, cap: usize },

    #[error("atom `{0}` is not in the vocabulary")]
    OutOfVocabulary(String),

    #[error("interpretations are over different vocabularies")]
    VocabularyMismatch,

    #[error("vocabulary must not be empty")]
    EmptyVocabulary,

    #[error("{postulate} expects {expected} formulas, got {found}")]
    Arity {
        postulate: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("instance size {n} is outside the supported range 1..={max}")]
    InstanceTooLarge { n: usize, max: usize },

    #[error("{0}")]
    Invalid(String),
}
