use std::collections::BTreeMap;

use super::chart::{Chart, Segment};
use crate::algebra::{Coefficient, Polynomial};

/// Determinant by cofactor expansion along the first row.
///
/// Panics if `matrix` is empty or not square.
pub fn determinant<C: Coefficient>(matrix: &[Vec<Polynomial<C>>]) -> Polynomial<C> {
    let n = matrix.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(matrix.iter().all(|row| row.len() == n), "matrix is not square");
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut acc = Polynomial::zero(matrix[0][0].variables(), matrix[0][0].ring());
    for (j, entry) in matrix[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<C>>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry * &determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn jacobian_matrix<C: Coefficient>(map: &[Polynomial<C>]) -> Vec<Vec<Polynomial<C>>> {
    map.iter()
        .map(|m| (0..m.variables().len()).map(|j| m.derivative(j)).collect())
        .collect()
}

/// True iff `p` is `unit * prod x_i^expected[i]`.
fn is_monomial_times_unit<C: Coefficient>(p: &Polynomial<C>, expected: &[u32]) -> bool {
    let mut q = p.clone();
    for (i, &want) in expected.iter().enumerate() {
        match q.monomial_content_at(i) {
            Ok((e, rest)) if e == want => q = rest,
            _ => return false,
        }
    }
    q.is_unit_at_origin()
}

fn expected_exponents(len: usize, h: &BTreeMap<usize, u32>) -> Vec<u32> {
    (0..len).map(|i| h.get(&i).copied().unwrap_or(0)).collect()
}

fn check_segment<C: Coefficient>(
    segment: &Segment<C>,
    map: &[Polynomial<C>],
    h: &BTreeMap<usize, u32>,
) -> bool {
    let Some(first) = map.first() else {
        return false;
    };
    let mut det = determinant(&jacobian_matrix(map));
    for (&e, &he) in &segment.anchor_h {
        det = &det * &map[e].pow(he);
    }
    if !is_monomial_times_unit(&det, &expected_exponents(first.variables().len(), h)) {
        return false;
    }
    let Some(link) = &segment.link else {
        return true;
    };
    // The coordinate change itself: unit Jacobian, and it carries the
    // monomial prod e^h to a unit multiple of itself.
    let link_det = determinant(&jacobian_matrix(&link.coords));
    if !link_det.is_unit_at_origin() {
        return false;
    }
    let vars = first.variables();
    let mut carried = Polynomial::one(vars, first.ring());
    for (&e, &he) in &link.parent_h {
        carried = &carried * &link.coords[e].pow(he);
    }
    if !is_monomial_times_unit(&carried, &expected_exponents(vars.len(), &link.parent_h)) {
        return false;
    }
    check_segment(&link.parent_segment, &link.parent_map, &link.parent_h)
}

/// Recompute the Jacobian determinant of the chart's composed coordinate
/// change and compare it with the recorded `h` exponents: it must be a unit
/// times `prod e^h_e`.
pub fn verify_jacobian<C: Coefficient>(chart: &Chart<C>) -> bool {
    check_segment(chart.segment(), chart.segment_map(), &chart.h_map())
}
