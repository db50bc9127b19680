use num_traits::{One, Signed};

use crate::algebra::{Coefficient, ExponentVector, Polynomial, Variables};

/// Canonical rendering: terms in graded order, `*` between factors, and
/// coefficients with more than one power-basis coordinate parenthesized.
///
/// `parse_poly(&format_poly(f), ..) == f` for every polynomial `f`.
pub fn format_poly<C: Coefficient>(f: &Polynomial<C>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let gen = C::generator_name(f.ring()).unwrap_or_default();
    let mut out = String::new();
    for (idx, (e, c)) in f.terms().enumerate() {
        let mono = format_monomial(e, f.variables());
        let (neg, body) = signed_term(c, &gen, &mono);
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Standalone rendering of a coefficient, e.g. `-1 - j` or `3/2*i`.
pub fn format_coefficient<C: Coefficient>(c: &C) -> String {
    let gen = C::generator_name(&c.ring()).unwrap_or_default();
    let parts = c.coordinates();
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (q, k)) in parts.iter().enumerate() {
        let neg = q.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&scaled_power(&q.abs(), *k, &gen, ""));
    }
    out
}

fn format_monomial(e: &ExponentVector, vars: &Variables) -> String {
    e.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| match k {
            1 => vars.name(i).to_string(),
            _ => format!("{}^{k}", vars.name(i)),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn power_of(gen: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => gen.to_string(),
        _ => format!("{gen}^{k}"),
    }
}

/// `a * gen^k * mono` with unit factors elided; `a` is non-negative.
fn scaled_power(a: &crate::algebra::Rational, k: usize, gen: &str, mono: &str) -> String {
    let factors: Vec<String> = [
        (!One::is_one(a) || (k == 0 && mono.is_empty())).then(|| a.to_string()),
        (k > 0).then(|| power_of(gen, k)),
        (!mono.is_empty()).then(|| mono.to_string()),
    ]
    .into_iter()
    .flatten()
    .collect();
    factors.join("*")
}

fn signed_term<C: Coefficient>(c: &C, gen: &str, mono: &str) -> (bool, String) {
    let parts = c.coordinates();
    match parts.as_slice() {
        [(q, k)] => (q.is_negative(), scaled_power(&q.abs(), *k, gen, mono)),
        _ => {
            let inner = format_coefficient(c);
            if mono.is_empty() {
                (false, format!("({inner})"))
            } else {
                (false, format!("({inner})*{mono}"))
            }
        }
    }
}
