use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group spec {0:?}")]
    UnknownGroup(String),
    #[error("order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("inconsistent group table: {0}")]
    InconsistentTable(String),
    #[error("group order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("ill-formed word: {0}")]
    IllFormedWord(String),
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
