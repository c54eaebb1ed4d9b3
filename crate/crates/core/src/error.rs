use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BzError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },
    #[error("no stabilization for {query} up to window {max_window}: last values {last:?}")]
    Stabilization {
        query: String,
        max_window: usize,
        last: Vec<i64>,
    },
    #[error("evaluation limit exceeded at {0}")]
    Evaluation(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, BzError>;

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(BzError::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(BzError::Overflow)
}
