use thiserror::Error;

use crate::algebra::{AlgebraError, ParseError};
use crate::field::FieldError;
use crate::oracle::OracleError;
use crate::tables::TableError;

#[derive(Debug, Error)]
pub enum HkError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid polynomial: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("enumerating q^m = {required} monomials exceeds the limit of {limit}")]
    EnumerationLimit { required: u128, limit: u64 },
    #[error("n must be at least 1")]
    ZeroExponent,
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<AlgebraError> for HkError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Parse(p) => HkError::Parse(p),
            other => HkError::Algebra(other),
        }
    }
}

impl HkError {
    /// True for size-gate failures, which the CLI reports with exit code 2.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            HkError::Oracle(OracleError::BudgetExceeded { .. }) | HkError::EnumerationLimit { .. }
        )
    }
}
