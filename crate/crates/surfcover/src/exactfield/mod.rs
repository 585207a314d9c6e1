//! Exact field arithmetic: arbitrary-precision rationals, Gaussian rationals
//! Q(i), and dense matrices over Q(i) with exact rank/kernel computations.
//!
//! Rationals are kept in canonical reduced form (positive denominator,
//! gcd(num, den) = 1, zero as 0/1); `num::BigRational` maintains exactly this
//! normal form, so it is used as the underlying representation.

mod gaussian;
mod matrix;

pub use gaussian::GaussianRational;
pub use matrix::ExactMatrix;

/// Canonical reduced fraction with arbitrary-precision numerator/denominator.
pub type Rational = num::BigRational;

/// Errors raised by field and matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Shorthand for building a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for building a reduced fraction n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(n.into(), d.into())
}
