use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{AlgebraError, Coefficient, ExponentVector, Rational};

/// Ordered, duplicate-free list of variable symbols shared by polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<I, S>(names: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Self(names.into()))
    }

    /// The default ambient coordinates `x, y, z`.
    pub fn xyz() -> Self {
        Self::new(["x", "y", "z"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`ExponentVector`], so iteration
/// follows the canonical graded order and no stored coefficient is zero.
#[derive(Clone)]
pub struct Polynomial<C: Coefficient> {
    vars: Variables,
    ring: C::Ring,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.ring == other.ring && self.terms == other.terms
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(vars: &Variables, ring: &C::Ring) -> Self {
        Self {
            vars: vars.clone(),
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Variables, ring: &C::Ring, c: C) -> Self {
        Self::monomial(vars, ring, ExponentVector::zeros(vars.len()), c)
    }

    pub fn from_rational(vars: &Variables, ring: &C::Ring, q: &Rational) -> Self {
        Self::constant(vars, ring, C::from_rational(ring, q))
    }

    pub fn one(vars: &Variables, ring: &C::Ring) -> Self {
        Self::constant(vars, ring, C::one_in(ring))
    }

    pub fn monomial(vars: &Variables, ring: &C::Ring, exps: ExponentVector, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars, ring);
        if !c.vanishes() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The coordinate function of variable number `idx`.
    pub fn var_at(vars: &Variables, ring: &C::Ring, idx: usize) -> Self {
        Self::monomial(vars, ring, ExponentVector::unit(vars.len(), idx, 1), C::one_in(ring))
    }

    pub fn variable(vars: &Variables, ring: &C::Ring, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var_at(vars, ring, vars.require(name)?))
    }

    /// Sums duplicate exponents and drops zeros.
    pub fn from_terms<I>(vars: &Variables, ring: &C::Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut p = Self::zero(vars, ring);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: ExponentVector, c: &C) {
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add_ref(c);
                if s.vanishes() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> C {
        self.terms.get(e).cloned().unwrap_or_else(|| C::zero_in(&self.ring))
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&ExponentVector::zeros(self.vars.len()))
    }

    /// True iff the constant term is nonzero.
    pub fn is_unit_at_origin(&self) -> bool {
        self.terms
            .keys()
            .next()
            .is_some_and(ExponentVector::is_constant)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_constant)
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Indices of the variables that occur in some term.
    pub fn variables_in_support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e.get(i) > 0))
            .collect()
    }

    /// Minimum over the support of the total degree in the given variables.
    pub fn order_in(&self, subset: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| subset.iter().map(|&i| e.get(i)).sum())
            .min()
    }

    fn compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.names().join(", "),
                right: other.vars.names().join(", "),
            });
        }
        if self.ring != other.ring {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg_poly())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.vars, &self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), &ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    fn neg_poly(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.vanishes() {
            return Self::zero(&self.vars, &self.ring);
        }
        let mut out = Self::zero(&self.vars, &self.ring);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &a.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars, &self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &ExponentVector) -> Self {
        Self {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.add(exps), c.clone())).collect(),
        }
    }

    /// Formal partial derivative in variable number `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars, &self.ring);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.set(var, k - 1);
            let factor = C::from_rational(&self.ring, &Rational::from_integer(k.into()));
            out.add_term(d, &c.mul_ref(&factor));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars.len()).map(|i| self.derivative(i)).collect()
    }

    /// Minimum exponent of variable `var` over the support.
    pub fn content_at(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).min()
    }

    /// Factor `f = var^e * q` with `q` not divisible by `var`.
    pub fn monomial_content(&self, var: &str) -> Result<(u32, Self), AlgebraError> {
        let idx = self.vars.require(var)?;
        self.monomial_content_at(idx)
    }

    pub fn monomial_content_at(&self, idx: usize) -> Result<(u32, Self), AlgebraError> {
        let e = self.content_at(idx).ok_or(AlgebraError::ZeroContent)?;
        let mut out = Self::zero(&self.vars, &self.ring);
        for (m, c) in &self.terms {
            let mut q = m.clone();
            q.set(idx, m.get(idx) - e);
            out.terms.insert(q, c.clone());
        }
        Ok((e, out))
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C, AlgebraError> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::PointLength {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = C::zero_in(&self.ring);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.as_slice().iter().enumerate() {
                for _ in 0..k {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    pub fn evaluate_at_origin(&self) -> C {
        self.constant_term()
    }

    /// Full composition: variable number `i` is replaced by `images[i]`.
    /// The result lives in the images' variable list.
    pub fn compose(&self, images: &[Self]) -> Result<Self, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::PointLength {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for img in images {
            first.compatible(img)?;
        }
        if first.ring != self.ring {
            return Err(AlgebraError::FieldMismatch);
        }
        let target = first.vars.clone();
        let n = self.vars.len();
        let mut max_exp = vec![0u32; n];
        for e in self.terms.keys() {
            for (i, m) in max_exp.iter_mut().enumerate() {
                *m = (*m).max(e.get(i));
            }
        }
        let powers: Vec<Vec<Self>> = (0..n)
            .map(|i| {
                let mut ps = vec![Self::one(&target, &self.ring)];
                for k in 1..=max_exp[i] as usize {
                    let next = &ps[k - 1] * &images[i];
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = Self::zero(&target, &self.ring);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, &self.ring, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            for (m, a) in t.terms {
                out.add_term(m, &a);
            }
        }
        Ok(out)
    }

    /// Partial substitution; unmapped variables stay fixed. Images must share
    /// this polynomial's variable list.
    pub fn substitute(&self, map: &BTreeMap<String, Self>) -> Result<Self, AlgebraError> {
        let mut images: Vec<Self> = (0..self.vars.len())
            .map(|i| Self::var_at(&self.vars, &self.ring, i))
            .collect();
        for (name, img) in map {
            let idx = self.vars.require(name)?;
            self.compatible(img)?;
            images[idx] = img.clone();
        }
        self.compose(&images)
    }

    /// Drop every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<'a, C: Coefficient> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    /// Panics on mismatched variable lists; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a, C: Coefficient> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, C: Coefficient> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.neg_poly()
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_poly(self))
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} in {:?})", self.vars)
    }
}
