use num_bigint::BigInt;
use thiserror::Error;

/// Coefficient-domain errors for Q(√q) arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("radicand must be a positive integer, got {0}")]
    BadRadicand(BigInt),
    #[error("mixed radicands {0} and {1}")]
    RadicandMismatch(BigInt, BigInt),
}

/// Errors in the `q = p^n` parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("p^n does not fit in 64 bits")]
    Overflow,
}

/// Structural polynomial errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial is not allowed here")]
    Zero,
    #[error("expected a monic polynomial")]
    NotMonic,
    #[error("expected even degree, got {0}")]
    OddDegree(usize),
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("constant term is zero")]
    ZeroConstant,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("coefficients are not Weil-symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Domain(#[from] DomainError),
}
