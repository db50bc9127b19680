//! Newton-polyhedron oracle: `lambda_NP = 1/t0` where `(t0, ..., t0)` is
//! the point where the diagonal leaves the Newton polyhedron
//! `conv(supp f) + R_{>=0}^d`. Computed twice, from facet normals (dual) and
//! from basic solutions of the primal linear program, and cross-checked.

mod linalg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{Coefficient, ExponentVector, Polynomial, Rational};

/// λ_NP is the pole candidate of a nondegenerate Newton boundary; the
/// nondegeneracy itself is not checked.
pub const NONDEGENERACY_CAVEAT: &str =
    "lambda_NP equals the pole index only when f is nondegenerate for its Newton boundary (not checked)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polyhedron")]
    ZeroPolynomial,
    #[error("f does not vanish at the origin")]
    UnitInput,
    #[error("weight vector must be nonzero")]
    ZeroWeight,
    #[error("weights must be {0}")]
    BadWeight(&'static str),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("f is a unit in the weight filtration (N(w) = 0)")]
    UnitInFiltration,
    /// Primal and dual `t0`, boxed to keep the error small.
    #[error("primal t0 = {} and dual t0 = {} disagree", .0.0, .0.1)]
    Disagreement(Box<(Rational, Rational)>),
}

/// Supporting hyperplane `w . a = n` of the Newton polyhedron, with `w`
/// primitive integral.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetNormal {
    pub w: Vec<Rational>,
    pub n: Rational,
}

impl FacetNormal {
    pub fn weight_sum(&self) -> Rational {
        self.w.iter().sum()
    }

    /// `n / sum(w)`, this facet's lower bound for `t0`.
    pub fn t_bound(&self) -> Rational {
        &self.n / self.weight_sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonData {
    pub support: Vec<ExponentVector>,
    pub facet_normals: Vec<FacetNormal>,
    pub t0: Rational,
    pub lambda_np: Rational,
    /// Convex weights on support points whose combination lies below
    /// `(t0, ..., t0)` coordinatewise.
    pub primal_witness: Vec<(ExponentVector, Rational)>,
}

impl NewtonData {
    /// A stored normal attaining `t0`.
    pub fn optimal_normal(&self) -> Option<&FacetNormal> {
        self.facet_normals.iter().find(|n| n.t_bound() == self.t0)
    }
}

pub fn support<C: Coefficient>(f: &Polynomial<C>) -> Result<Vec<ExponentVector>, NewtonError> {
    if f.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    Ok(f.support())
}

fn dot(w: &[Rational], a: &ExponentVector) -> Rational {
    w.iter()
        .zip(a.as_slice())
        .map(|(wi, &ai)| wi * Rational::from_integer(BigInt::from(ai)))
        .sum()
}

/// `N(w) = min over the support of w . a`.
pub fn w_order<C: Coefficient>(f: &Polynomial<C>, w: &[Rational]) -> Result<Rational, NewtonError> {
    let supp = support(f)?;
    check_weights(f, w)?;
    Ok(min_dot(&supp, w))
}

fn min_dot(supp: &[ExponentVector], w: &[Rational]) -> Rational {
    supp.iter().map(|a| dot(w, a)).min().expect("nonempty support")
}

fn check_weights<C: Coefficient>(f: &Polynomial<C>, w: &[Rational]) -> Result<(), NewtonError> {
    let d = f.variables().len();
    if w.len() != d {
        return Err(NewtonError::WeightLength { expected: d, got: w.len() });
    }
    if w.iter().any(Signed::is_negative) {
        return Err(NewtonError::BadWeight("non-negative"));
    }
    if w.iter().all(Zero::is_zero) {
        return Err(NewtonError::ZeroWeight);
    }
    Ok(())
}

/// `sum(w) / N(w)` for a strictly positive weight.
pub fn weighted_candidate<C: Coefficient>(f: &Polynomial<C>, w: &[u32]) -> Result<Rational, NewtonError> {
    if w.contains(&0) {
        return Err(NewtonError::BadWeight("strictly positive"));
    }
    let wq: Vec<Rational> = w.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let n = w_order(f, &wq)?;
    if n.is_zero() {
        return Err(NewtonError::UnitInFiltration);
    }
    Ok(wq.iter().sum::<Rational>() / n)
}

fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from_integer(if g.is_zero() { x } else { x / &g }))
        .collect()
}

/// Subsets of `0..n` of size `k`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn to_q(e: u32) -> Rational {
    Rational::from_integer(BigInt::from(e))
}

/// Facet normals: hyperplanes through `s` support points and parallel to
/// `d - s` coordinate directions that support the whole polyhedron.
fn dual_normals(supp: &[ExponentVector], d: usize) -> Vec<FacetNormal> {
    let mut found = std::collections::BTreeSet::new();
    for s in 1..=d.min(supp.len()) {
        for pts in subsets(supp.len(), s) {
            for dirs in subsets(d, d - s) {
                // Unknowns (w_1..w_d, N).
                let mut rows = Vec::with_capacity(d);
                for &p in &pts {
                    let mut row: Vec<Rational> = supp[p].as_slice().iter().map(|&e| to_q(e)).collect();
                    row.push(-Rational::one());
                    rows.push(row);
                }
                for &j in &dirs {
                    let mut row = vec![Rational::zero(); d + 1];
                    row[j] = Rational::one();
                    rows.push(row);
                }
                let ns = linalg::nullspace(rows, d + 1);
                if ns.len() != 1 {
                    continue;
                }
                for sign in [1, -1] {
                    let v: Vec<Rational> = ns[0].iter().map(|x| x * Rational::from_integer(sign.into())).collect();
                    let (w, n) = v.split_at(d);
                    if w.iter().any(Signed::is_negative) || w.iter().all(Zero::is_zero) {
                        continue;
                    }
                    if supp.iter().any(|a| dot(w, a) < n[0]) {
                        continue;
                    }
                    let prim = primitive(&v);
                    let (w, n) = prim.split_at(d);
                    found.insert(FacetNormal {
                        w: w.to_vec(),
                        n: n[0].clone(),
                    });
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Minimum `t` over basic feasible solutions of
/// `sum l_p a_p <= t 1, sum l_p = 1, l >= 0`: choose points `P` and tight
/// coordinates `I` with `|P| = |I|`.
fn primal_t0(supp: &[ExponentVector], d: usize) -> Option<(Rational, Vec<(usize, Rational)>)> {
    let mut best: Option<(Rational, Vec<(usize, Rational)>)> = None;
    for k in 1..=d.min(supp.len()) {
        for pts in subsets(supp.len(), k) {
            for tight in subsets(d, k) {
                // Unknowns (l_p for p in pts, t).
                let mut a = Vec::with_capacity(k + 1);
                let mut b = Vec::with_capacity(k + 1);
                for &i in &tight {
                    let mut row: Vec<Rational> = pts.iter().map(|&p| to_q(supp[p].get(i))).collect();
                    row.push(-Rational::one());
                    a.push(row);
                    b.push(Rational::zero());
                }
                let mut ones = vec![Rational::one(); k];
                ones.push(Rational::zero());
                a.push(ones);
                b.push(Rational::one());
                let Some(x) = linalg::solve(&a, &b) else {
                    continue;
                };
                let (lambda, t) = x.split_at(k);
                let t = &t[0];
                if lambda.iter().any(Signed::is_negative) {
                    continue;
                }
                let feasible = (0..d).all(|j| {
                    let c: Rational = pts.iter().zip(lambda).map(|(&p, l)| l * to_q(supp[p].get(j))).sum();
                    &c <= t
                });
                if !feasible {
                    continue;
                }
                if best.as_ref().is_none_or(|(bt, _)| t < bt) {
                    best = Some((t.clone(), pts.iter().copied().zip(lambda.iter().cloned()).collect()));
                }
            }
        }
    }
    best
}

/// Exact `lambda_NP`, computed from facet normals and confirmed by the
/// primal program.
pub fn lambda_newton<C: Coefficient>(f: &Polynomial<C>) -> Result<NewtonData, NewtonError> {
    let supp = support(f)?;
    if supp.iter().any(ExponentVector::is_constant) {
        return Err(NewtonError::UnitInput);
    }
    let d = f.variables().len();
    let normals = dual_normals(&supp, d);
    let dual = normals
        .iter()
        .map(FacetNormal::t_bound)
        .max()
        .unwrap_or_else(Rational::zero);
    let (primal, witness) =
        primal_t0(&supp, d).ok_or_else(|| NewtonError::Disagreement(Box::new((Rational::zero(), dual.clone()))))?;
    if primal != dual || primal.is_zero() {
        return Err(NewtonError::Disagreement(Box::new((primal, dual))));
    }
    Ok(NewtonData {
        primal_witness: witness
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(p, l)| (supp[p].clone(), l))
            .collect(),
        support: supp,
        facet_normals: normals,
        lambda_np: primal.recip(),
        t0: primal,
    })
}
