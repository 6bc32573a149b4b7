use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring descriptor `{0}`: {1}")]
    Descriptor(String, String),
    #[error("unsupported ring: {0}")]
    Unsupported(String),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("element outside the required domain: {0}")]
    Domain(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
