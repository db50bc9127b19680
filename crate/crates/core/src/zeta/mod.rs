//! Pole indices `(h + 1) / k` read off a resolution tree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::algebra::{Coefficient, Rational};
use crate::blowup::{ChartStatus, DivisorId, ResolutionTree};
use crate::newton::NewtonData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("no divisor with k >= 1 is visible in any leaf chart")]
    NoCandidates,
    #[error("the tree still has open leaves")]
    OpenLeaves,
    #[error("lambda = {0} is not attained in any leaf chart")]
    NotAttained(Rational),
}

/// Candidate `(h + 1) / k` of one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleIndex {
    pub divisor: DivisorId,
    /// First leaf chart (depth-first) where the divisor is visible.
    pub chart: String,
    pub variable: String,
    pub k: u32,
    pub h: u32,
    /// Conjugate copies declared by `orbit`.
    pub copies: u32,
}

impl PoleIndex {
    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.h + 1), BigInt::from(self.k))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleReport {
    pub lambda_uncapped: Rational,
    pub lambda_capped: Rational,
    pub multiplicity: u32,
    pub candidates: Vec<PoleIndex>,
    /// Every leaf has a unit strict transform.
    pub certified: bool,
    /// Some leaf hit the depth limit.
    pub failed: bool,
    pub newton_value: Option<Rational>,
    pub newton_agrees: Option<bool>,
}

impl PoleReport {
    pub fn compare_newton(&mut self, newton: &NewtonData) {
        self.newton_agrees = Some(newton.lambda_np == self.lambda_uncapped);
        self.newton_value = Some(newton.lambda_np.clone());
    }
}

fn check_leaves<C: Coefficient>(tree: &ResolutionTree<C>) -> Result<(), ZetaError> {
    if tree.leaves().any(|c| c.status() == ChartStatus::Open) {
        return Err(ZetaError::OpenLeaves);
    }
    Ok(())
}

/// One candidate per divisor with `k >= 1` visible in some leaf chart,
/// deduplicated by divisor identity, in depth-first order of first sight.
pub fn divisor_candidates<C: Coefficient>(tree: &ResolutionTree<C>) -> Result<Vec<PoleIndex>, ZetaError> {
    check_leaves(tree)?;
    let mut seen: BTreeMap<DivisorId, usize> = BTreeMap::new();
    let mut out: Vec<PoleIndex> = Vec::new();
    for leaf in tree.leaves() {
        for (var, d) in leaf.divisors() {
            if d.k == 0 || seen.contains_key(&d.id) {
                continue;
            }
            seen.insert(d.id.clone(), out.len());
            out.push(PoleIndex {
                divisor: d.id.clone(),
                chart: leaf.path_string(),
                variable: var.to_string(),
                k: d.k,
                h: d.h,
                copies: d.copies,
            });
        }
    }
    if out.is_empty() {
        return Err(ZetaError::NoCandidates);
    }
    Ok(out)
}

/// Minimum candidate over exceptional and coordinate divisors; the strict
/// transform's own candidate 1 is left out.
pub fn lambda_uncapped<C: Coefficient>(tree: &ResolutionTree<C>) -> Result<PoleReport, ZetaError> {
    let candidates = divisor_candidates(tree)?;
    let lambda = candidates
        .iter()
        .map(PoleIndex::value)
        .min()
        .expect("nonempty candidates");
    let multiplicity = multiplicity(tree, &lambda)?;
    let mut report = PoleReport {
        lambda_capped: Rational::one(),
        lambda_uncapped: lambda,
        multiplicity,
        candidates,
        certified: tree.is_certified() && !tree.failed(),
        failed: tree.failed(),
        newton_value: None,
        newton_agrees: None,
    };
    report.lambda_capped = lambda_capped(&report, tree.root_polynomial().is_unit_at_origin());
    Ok(report)
}

/// `min(1, lambda_uncapped)`; a unit has no strict-transform divisor, so
/// nothing is capped.
pub fn lambda_capped(report: &PoleReport, f_is_unit: bool) -> Rational {
    if f_is_unit {
        report.lambda_uncapped.clone()
    } else {
        report.lambda_uncapped.clone().min(Rational::one())
    }
}

/// Largest number of divisors attaining `lambda` inside a single leaf chart.
pub fn multiplicity<C: Coefficient>(tree: &ResolutionTree<C>, lambda: &Rational) -> Result<u32, ZetaError> {
    let best = tree
        .leaves()
        .map(|leaf| {
            leaf.divisors()
                .filter(|(_, d)| {
                    d.k > 0 && &Rational::new(BigInt::from(d.h + 1), BigInt::from(d.k)) == lambda
                })
                .count() as u32
        })
        .max()
        .unwrap_or(0);
    if best == 0 {
        return Err(ZetaError::NotAttained(lambda.clone()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests;
