use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands live in different graded rings")]
    RingMismatch,
    #[error("invalid ring presentation: {0}")]
    InvalidRing(String),
    #[error("cannot parse ring element `{text}`: {reason}")]
    ElementParse { text: String, reason: String },
    #[error("invalid total class: {0}")]
    InvalidTotalClass(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is missing from the {1} map")]
    MissingEntry(String, &'static str),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("flag condition check failed with {0} counterexample(s)")]
    FlagNotGeneric(usize),
    #[error("malformed complex file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
