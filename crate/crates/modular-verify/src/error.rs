use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
    #[error(transparent)]
    Sym(#[from] symfunc::SymError),
    #[error(transparent)]
    Genus(#[from] genus_assembly::GenusError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
