//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by simulators, series evaluation, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested computation exceeds the desk-scale resource budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// An iterative scheme failed to converge within its iteration cap.
    /// Distinct from a query that provably has no solution.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
