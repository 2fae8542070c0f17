use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenusError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
    #[error(transparent)]
    Lambda(#[from] lambda_ring::LambdaError),
    #[error(transparent)]
    Sym(#[from] symfunc::SymError),
}

pub type Result<T> = std::result::Result<T, GenusError>;
