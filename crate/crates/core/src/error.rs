use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("zero ring: {0}")]
    ZeroRing(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("semisimple quotient does not split over the ground field: {0}")]
    NonSplit(String),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
