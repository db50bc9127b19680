use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, Rational};

/// Exact coefficient ring of a [`Polynomial`](super::Polynomial).
///
/// Elements may need a context (the minimal polynomial of a number field),
/// which is carried by `Ring`. Two implementations ship with the crate:
/// plain [`Rational`] (context `()`) and [`FieldElement`](super::FieldElement).
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    type Ring: Clone + PartialEq + Debug + Send + Sync;

    fn ring(&self) -> Self::Ring;
    fn from_rational(ring: &Self::Ring, q: &Rational) -> Self;
    /// The field generator, if `name` is its symbol.
    fn generator(ring: &Self::Ring, name: &str) -> Option<Self>;
    fn generator_name(ring: &Self::Ring) -> Option<String>;

    fn vanishes(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inverse(&self) -> Result<Self, AlgebraError>;

    /// Nonzero coordinates in the power basis, as `(coefficient, power)`
    /// pairs in increasing power.
    fn coordinates(&self) -> Vec<(Rational, usize)>;

    /// Image under the fixed complex embedding of the ring.
    fn embed<F: Float>(&self) -> Complex<F>;

    fn zero_in(ring: &Self::Ring) -> Self {
        Self::from_rational(ring, &Rational::zero())
    }

    fn one_in(ring: &Self::Ring) -> Self {
        Self::from_rational(ring, &Rational::one())
    }

    fn is_unity(&self) -> bool {
        let c = self.coordinates();
        c.len() == 1 && c[0].1 == 0 && One::is_one(&c[0].0)
    }

    /// `Some(q)` when the element is the rational `q`.
    fn as_rational(&self) -> Option<Rational> {
        let c = self.coordinates();
        match c.as_slice() {
            [] => Some(Rational::zero()),
            [(q, 0)] => Some(q.clone()),
            _ => None,
        }
    }
}

pub(crate) fn rational_to_float<F: Float>(q: &Rational) -> F {
    let v = q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    });
    F::from(v).unwrap_or_else(F::nan)
}

impl Coefficient for Rational {
    type Ring = ();

    fn ring(&self) {}

    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }

    fn generator(_: &(), _: &str) -> Option<Self> {
        None
    }

    fn generator_name(_: &()) -> Option<String> {
        None
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn coordinates(&self) -> Vec<(Rational, usize)> {
        if Zero::is_zero(self) {
            Vec::new()
        } else {
            vec![(self.clone(), 0)]
        }
    }

    fn embed<F: Float>(&self) -> Complex<F> {
        Complex::new(rational_to_float(self), F::zero())
    }
}
