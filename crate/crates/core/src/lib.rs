//! Exact computation of pole indices `min (h + 1) / k` of hypersurface
//! singularities by blow-ups, audited by a Newton-polyhedron oracle and a
//! Monte Carlo volume-scaling estimator.

pub mod algebra;
pub mod blowup;
pub mod catalogue;
pub mod estimator;
pub mod newton;
pub mod parser;
pub mod zeta;

pub use algebra::{
    AlgebraError, Coefficient, ExponentVector, FieldElement, NumberField, Polynomial, Rational,
    Variables,
};

/// Polynomials over a session number field, the engine's working type.
pub type Poly = Polynomial<FieldElement>;
/// Polynomials with plain rational coefficients.
pub type RationalPoly = Polynomial<Rational>;
/// Double-precision Monte Carlo estimate.
pub type Estimate64 = estimator::Estimate<f64>;
/// Single-precision Monte Carlo estimate.
pub type Estimate32 = estimator::Estimate<f32>;
