use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
}

pub type Result<T> = std::result::Result<T, SymError>;
