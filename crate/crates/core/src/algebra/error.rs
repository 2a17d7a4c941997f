use thiserror::Error;

use super::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} requires a nonzero input")]
    ZeroInput(&'static str),
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("coefficient {value} is not an element of {ring}")]
    NotInRing { value: String, ring: Ring },
    #[error("factorization search bound exceeded ({0}); increase the bound")]
    FactorBoundExceeded(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

pub(crate) fn same_ring(left: Ring, right: Ring) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch { left, right })
    }
}
