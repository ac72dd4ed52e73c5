use thiserror::Error;

use dtseries::formulas::FormulaError;
use dtseries::geometry::GeometryError;
use dtseries::local_hom::LocalHomError;
use dtseries::series::SeriesError;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<LocalHomError> for CliError {
    fn from(e: LocalHomError) -> Self {
        match e {
            LocalHomError::Internal(msg) => CliError::CrossCheck(msg),
            other => CliError::Validation(other.to_string()),
        }
    }
}
