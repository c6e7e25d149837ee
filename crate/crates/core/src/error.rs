use thiserror::Error;

/// Errors raised by ingestion, validation, and measure computation.
#[derive(Debug, Error)]
pub enum Error {
    /// The file header does not contain what was asked for.
    #[error("schema error: {0}")]
    Schema(String),
    /// A cell failed to parse or parsed to a non-finite value.
    #[error("ingestion error: {0}")]
    Ingestion(String),
    /// The dataset violates a structural requirement of the computation.
    #[error("validation error: {0}")]
    Validation(String),
    /// An argument is outside its documented range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Too few rows to determine a least-squares fit.
    #[error("underdetermined system: {0}")]
    Underdetermined(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
