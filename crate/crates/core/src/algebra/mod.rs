//! Exact arithmetic: rationals, elements of a simple algebraic extension
//! `Q(a)`, and sparse multivariate polynomials over either.

mod coefficient;
mod error;
mod monomial;
mod number_field;
mod polynomial;
mod univariate;

pub use coefficient::Coefficient;
pub use error::AlgebraError;
pub use monomial::ExponentVector;
pub use number_field::{FieldElement, NumberField};
pub use polynomial::{Polynomial, Variables};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Build a rational from a machine numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Build an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
