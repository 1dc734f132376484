use thiserror::Error;

/// Errors raised by the algebra kernel.
///
/// `Domain` covers inputs outside the domain of an operation (a negative
/// divided-power index, a non-central argument to the Harish-Chandra
/// expansion). `Internal` flags a broken invariant and should never surface
/// for valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(AlgebraError::Domain(msg.into()))
}
