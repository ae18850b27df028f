/// Errors from simulation campaigns and estimators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum McError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient statistics: {0}")]
    InsufficientStatistics(String),
    #[error("insufficient range: {0}")]
    InsufficientRange(String),
}

pub type Result<T> = std::result::Result<T, McError>;
