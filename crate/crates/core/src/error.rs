use thiserror::Error;

use crate::scalar::Realization;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("realization mismatch: {lhs} vs {rhs}")]
    RealizationMismatch { lhs: Realization, rhs: Realization },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {lhs} vs {rhs}")]
    Dimension { lhs: usize, rhs: usize },

    #[error("resource cap exceeded: n = {n} is above the cap {cap}")]
    ResourceCap { n: u32, cap: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent must evaluate to a nonnegative integer, got {0}")]
    BadExponent(String),
}
