use std::cmp::Ordering;
use std::fmt;

/// Exponents of one monomial, one entry per ambient variable.
///
/// The ordering is the canonical term order used for formatting: total
/// degree ascending, then lexicographically descending in variable order,
/// so `x^2 < y^2 < y^2*z < z^3` for variables `x, y, z`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn unit(len: usize, var: usize, exp: u32) -> Self {
        let mut v = vec![0; len];
        v[var] = exp;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, exp: u32) {
        self.0[var] = exp;
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let x2 = ExponentVector::new(vec![2, 0, 0]);
        let y2 = ExponentVector::new(vec![0, 2, 0]);
        let y2z = ExponentVector::new(vec![0, 2, 1]);
        let z3 = ExponentVector::new(vec![0, 0, 3]);
        let one = ExponentVector::zeros(3);
        let mut v = vec![z3.clone(), y2z.clone(), one.clone(), y2.clone(), x2.clone()];
        v.sort();
        assert_eq!(v, vec![one, x2, y2, y2z, z3]);
    }
}
