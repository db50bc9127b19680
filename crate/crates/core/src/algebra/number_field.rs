use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::coefficient::rational_to_float;
use super::univariate::{divrem, gcd_with_cofactor, mul as umul, trim};
use super::{AlgebraError, Coefficient, Rational};

/// A simple algebraic extension `Q(a) = Q[t]/(p(t))` with `p` monic.
///
/// Irreducibility of `p` is not checked up front. A reducible `p` is caught
/// the first time a nonzero zero divisor is inverted.
#[derive(Debug, Clone)]
pub struct NumberField {
    /// Full coefficient list of `p`, constant term first, leading 1 last.
    minpoly: Vec<Rational>,
    name: String,
    embedding: Complex<f64>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.name == other.name
    }
}

impl NumberField {
    /// `minpoly` lists the coefficients of `t^0, ..., t^m`; it must be monic
    /// of degree `m >= 1`.
    pub fn new(minpoly: Vec<Rational>, name: impl Into<String>) -> Result<Arc<Self>, AlgebraError> {
        let name = name.into();
        if minpoly.len() < 2 {
            return Err(AlgebraError::InvalidField(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if !One::is_one(minpoly.last().unwrap()) {
            return Err(AlgebraError::InvalidField(
                "minimal polynomial must be monic".into(),
            ));
        }
        if !name.is_empty()
            && !(name.chars().next().unwrap().is_ascii_alphabetic()
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
        {
            return Err(AlgebraError::InvalidField(format!(
                "`{name}` is not a valid generator symbol"
            )));
        }
        let embedding = principal_root(&minpoly);
        Ok(Arc::new(Self {
            minpoly,
            name,
            embedding,
        }))
    }

    /// Plain `Q`, with no generator symbol.
    pub fn rationals() -> Arc<Self> {
        Self::new(vec![Rational::zero(), Rational::one()], "").unwrap()
    }

    /// `Q(i)`, `i^2 = -1`.
    pub fn gaussian() -> Arc<Self> {
        Self::new(vec![Rational::one(), Rational::zero(), Rational::one()], "i").unwrap()
    }

    /// `Q(j)`, `j^2 + j + 1 = 0`; `j` embeds as `exp(2 pi i / 3)`.
    pub fn eisenstein() -> Arc<Self> {
        Self::new(vec![Rational::one(), Rational::one(), Rational::one()], "j").unwrap()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }

    /// Complex image of the generator: the root of the minimal polynomial
    /// with the largest real part, ties broken by the largest imaginary part.
    pub fn embedding(&self) -> Complex<f64> {
        self.embedding
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        trim(&mut coeffs);
        let m = self.degree();
        if coeffs.len() > m {
            coeffs = divrem(&coeffs, &self.minpoly).1;
        }
        coeffs.resize(m, Rational::zero());
        coeffs
    }
}

/// Durand-Kerner iteration followed by a choice of the principal root.
fn principal_root(minpoly: &[Rational]) -> Complex<f64> {
    let p: Vec<Complex<f64>> = minpoly
        .iter()
        .map(|c| Complex::new(c.to_f64().unwrap_or(0.0), 0.0))
        .collect();
    let m = p.len() - 1;
    if m == 1 {
        return -p[0];
    }
    let eval = |z: Complex<f64>| p.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex<f64>> = (0..m).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0;
        for k in 0..m {
            let zk = roots[k];
            let denom = (0..m)
                .filter(|&l| l != k)
                .fold(Complex::new(1.0, 0.0), |acc, l| acc * (zk - roots[l]));
            if denom.norm() == 0.0 {
                roots[k] += Complex::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(zk) / denom;
            roots[k] = zk - step;
            delta = f64::max(delta, step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let tol = 1e-9;
    roots
        .into_iter()
        .fold(None::<Complex<f64>>, |best, z| match best {
            None => Some(z),
            Some(b) if z.re > b.re + tol || ((z.re - b.re).abs() <= tol && z.im > b.im) => Some(z),
            keep => keep,
        })
        .unwrap()
}

/// An element of a [`NumberField`], in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    /// Reduces an arbitrary polynomial in the generator (constant term first).
    pub fn from_power_series(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        Self {
            coords: field.reduce(coeffs),
            field: field.clone(),
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        Self::from_power_series(field, vec![q])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_power_series(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of `t`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_power_series(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "field element arithmetic across different number fields"
        );
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (g, s) = gcd_with_cofactor(&self.coords, &self.field.minpoly);
        if g.len() != 1 {
            return Err(AlgebraError::ZeroDivisor {
                element: self.to_string(),
            });
        }
        Ok(Self::from_power_series(&self.field, s))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Renders `c * a^k` sums such as `-1 - j` or `1/2*i`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.field.name.as_str();
        let parts = self.coordinates();
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (idx, (c, k)) in parts.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let power = match k {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{k}"),
            };
            match (power.is_empty(), One::is_one(&a)) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => f.write_str(&power)?,
                (false, false) => write!(f, "{a}*{power}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement::from_power_series(&self.field, umul(&self.coords, &rhs.coords))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Coefficient for FieldElement {
    type Ring = Arc<NumberField>;

    fn ring(&self) -> Arc<NumberField> {
        self.field.clone()
    }

    fn from_rational(ring: &Arc<NumberField>, q: &Rational) -> Self {
        FieldElement::from_rational(ring, q.clone())
    }

    fn generator(ring: &Arc<NumberField>, name: &str) -> Option<Self> {
        (!ring.name.is_empty() && ring.name == name).then(|| FieldElement::generator(ring))
    }

    fn generator_name(ring: &Arc<NumberField>) -> Option<String> {
        (!ring.name.is_empty()).then(|| ring.name.clone())
    }

    fn vanishes(&self) -> bool {
        FieldElement::is_zero(self)
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
        self.inv()
    }

    fn coordinates(&self) -> Vec<(Rational, usize)> {
        // Degree-one fields hold a single rational coordinate; the generator
        // itself is a rational there, so never report powers of it.
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| (c.clone(), k))
            .collect()
    }

    fn embed<F: Float>(&self) -> Complex<F> {
        let a = Complex::new(
            F::from(self.field.embedding.re).unwrap(),
            F::from(self.field.embedding.im).unwrap(),
        );
        self.coords.iter().rev().fold(Complex::new(F::zero(), F::zero()), |acc, c| {
            acc * a + Complex::new(rational_to_float::<F>(c), F::zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn gi() -> (Arc<NumberField>, FieldElement) {
        let k = NumberField::gaussian();
        let i = FieldElement::generator(&k);
        (k, i)
    }

    #[test]
    fn make_rejects_bad_input() {
        assert!(matches!(NumberField::new(vec![], "a"), Err(AlgebraError::InvalidField(_))));
        assert!(matches!(NumberField::new(vec![int(1)], "a"), Err(AlgebraError::InvalidField(_))));
        assert!(matches!(
            NumberField::new(vec![int(1), int(0), int(2)], "a"),
            Err(AlgebraError::InvalidField(_))
        ));
    }

    #[test]
    fn degree_one_is_plain_rationals() {
        let q = NumberField::new(vec![int(0), int(1)], "t").unwrap();
        assert_eq!(q.degree(), 1);
        let t = FieldElement::generator(&q);
        assert!(t.is_zero());
        let half = FieldElement::from_rational(&q, rat(1, 2));
        assert_eq!((&half * &half).coords(), &[rat(1, 4)]);
    }

    #[test]
    fn gaussian_products() {
        let (k, i) = gi();
        let one = FieldElement::one(&k);
        let a = &one + &i;
        let b = &one - &i;
        assert_eq!(&a * &b, FieldElement::from_int(&k, 2));
        assert_eq!(i.inv().unwrap(), -&i);
    }

    #[test]
    fn eisenstein_reduction() {
        let k = NumberField::eisenstein();
        let j = FieldElement::generator(&k);
        let jj = &j * &j;
        let expected = FieldElement::from_power_series(&k, vec![int(-1), int(-1)]);
        assert_eq!(jj, expected);
        assert_eq!(jj.to_string(), "-1 - j");
        assert_eq!(j.pow(3), FieldElement::one(&k));
    }

    #[test]
    fn inverse_errors() {
        let (k, _) = gi();
        assert_eq!(FieldElement::zero(&k).inv(), Err(AlgebraError::DivisionByZero));
        // t^2 - 1 is reducible: t - 1 is a nonzero zero divisor.
        let bad = NumberField::new(vec![int(-1), int(0), int(1)], "s").unwrap();
        let s = FieldElement::generator(&bad);
        let e = &s - &FieldElement::one(&bad);
        assert!(matches!(e.inv(), Err(AlgebraError::ZeroDivisor { .. })));
    }

    #[test]
    fn inverse_roundtrip_in_cubic_field() {
        let k = NumberField::new(vec![int(-2), int(0), int(0), int(1)], "c").unwrap();
        let a = FieldElement::from_power_series(&k, vec![int(1), rat(2, 3), int(-5)]);
        assert_eq!(&a * &a.inv().unwrap(), FieldElement::one(&k));
    }

    #[test]
    fn embeddings_are_principal_roots() {
        let i = NumberField::gaussian().embedding();
        assert!((i - Complex::new(0.0, 1.0)).norm() < 1e-12);
        let j = NumberField::eisenstein().embedding();
        assert!((j - Complex::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
        let c = NumberField::new(vec![int(-2), int(0), int(0), int(1)], "c").unwrap();
        assert!((c.embedding().re - 2f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        let (k, i) = gi();
        assert_eq!(FieldElement::zero(&k).to_string(), "0");
        assert_eq!((&i + &i).to_string(), "2*i");
        assert_eq!((-&i).to_string(), "-i");
        let x = FieldElement::from_power_series(&k, vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(x.to_string(), "1/2 - 3/4*i");
    }
}
