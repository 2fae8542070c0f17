use thiserror::Error;

/// Errors raised by the series kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Operands live in different variable universes or cap settings.
    #[error("configuration error: {0}")]
    Config(String),
    /// An operation was applied outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
