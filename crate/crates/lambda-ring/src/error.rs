use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LambdaError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
}

pub type Result<T> = std::result::Result<T, LambdaError>;
