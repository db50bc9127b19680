use super::*;
use crate::algebra::{int, rat, FieldElement, NumberField, Polynomial, Variables};
use crate::blowup::{resolve, Strategy};
use crate::newton::lambda_newton;
use crate::parser::parse_poly;

type P = Polynomial<FieldElement>;

fn poly(s: &str, vars: &[&str]) -> P {
    parse_poly(s, &NumberField::gaussian(), &Variables::new(vars.iter().copied()).unwrap()).unwrap()
}

fn gauss(s: &str) -> P {
    poly(s, &["x", "y", "z"])
}

fn report(f: &P) -> PoleReport {
    let tree = resolve(f, &Strategy::auto()).unwrap();
    let mut r = lambda_uncapped(&tree).unwrap();
    r.compare_newton(&lambda_newton(f).unwrap());
    r
}

fn du_val() -> Vec<P> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(gauss(&format!("x^2 + y^2 + z^{}", n + 1)));
    }
    for n in 4..=9 {
        out.push(gauss(&format!("x^2 + y^2*z + z^{}", n - 1)));
    }
    out.push(gauss("x^2 + y^3 + z^4"));
    out.push(gauss("x^2 + y^3 + y*z^3"));
    out.push(gauss("x^2 + y^3 + z^5"));
    out
}

#[test]
fn a5_certified() {
    let r = report(&gauss("x^2 + y^2 + z^6"));
    assert_eq!(r.lambda_uncapped, rat(7, 6));
    assert_eq!(r.lambda_capped, int(1));
    assert_eq!(r.multiplicity, 1);
    assert!(r.certified);
    assert_eq!(r.newton_agrees, Some(true));
    let best = r.candidates.iter().find(|c| c.value() == rat(7, 6)).unwrap();
    assert_eq!((best.k, best.h), (6, 6));
}

#[test]
fn a4_uncertified_chain_value() {
    let r = report(&gauss("x^2 + y^2 + z^5"));
    assert_eq!(r.lambda_uncapped, rat(5, 4));
    assert!(!r.certified);
    assert_eq!(r.newton_value, Some(rat(6, 5)));
    assert_eq!(r.newton_agrees, Some(false));
}

#[test]
fn side_chart_candidate() {
    let tree = resolve(&gauss("x^2 + y^2*z + z^3"), &Strategy::auto()).unwrap();
    let ux = tree.find("root/U_x").unwrap();
    let d = ux.divisor("x").unwrap();
    assert_eq!((d.k, d.h), (2, 2));
    let cands = divisor_candidates(&tree).unwrap();
    let first = cands.iter().find(|c| c.divisor == d.id).unwrap();
    assert_eq!(first.value(), rat(3, 2));
}

#[test]
fn monomial_input() {
    let f = poly("x^2*y^2", &["x", "y"]);
    let r = report(&f);
    assert_eq!(r.candidates.len(), 2);
    assert!(r.candidates.iter().all(|c| c.value() == rat(1, 2)));
    assert_eq!(r.lambda_uncapped, rat(1, 2));
    assert_eq!(r.lambda_capped, rat(1, 2));
    assert_eq!(r.multiplicity, 2);
    assert!(r.certified);
}

#[test]
fn monomials_match_newton() {
    for (a, b, c) in [(1, 2, 3), (2, 2, 2), (4, 1, 1), (3, 5, 2)] {
        let f = gauss(&format!("x^{a}*y^{b}*z^{c}"));
        let r = report(&f);
        assert_eq!(r.lambda_uncapped, rat(1, a.max(b).max(c)));
        assert_eq!(r.newton_agrees, Some(true));
    }
}

#[test]
fn plane_node() {
    let f = poly("x^2 + y^2", &["x", "y"]);
    let r = report(&f);
    assert_eq!(r.lambda_uncapped, int(1));
    assert_eq!(r.multiplicity, 1);
}

#[test]
fn capping() {
    let r = report(&gauss("x^2 + y^2 + z^2"));
    assert_eq!(r.lambda_uncapped, rat(3, 2));
    assert_eq!(r.lambda_capped, int(1));
    assert_eq!(lambda_capped(&r, true), rat(3, 2));
}

#[test]
fn candidates_are_stored_exponents() {
    for f in du_val() {
        let tree = resolve(&f, &Strategy::auto()).unwrap();
        for c in divisor_candidates(&tree).unwrap() {
            let chart = tree.find(&c.chart).unwrap();
            let d = chart.divisor(&c.variable).unwrap();
            assert_eq!(d.id, c.divisor);
            assert_eq!(c.value(), rat(d.h as i64 + 1, d.k as i64));
        }
    }
}

#[test]
fn refinement_is_monotone() {
    for f in du_val() {
        let mut prev: Option<Rational> = None;
        for depth in 1..=8 {
            let tree = resolve(&f, &Strategy::Auto { max_depth: depth }).unwrap();
            let lambda = lambda_uncapped(&tree).unwrap().lambda_uncapped;
            if let Some(p) = &prev {
                assert!(&lambda <= p, "{f} at depth {depth}");
            }
            prev = Some(lambda);
        }
    }
}

#[test]
fn scale_invariance() {
    let k = NumberField::gaussian();
    let scalars = [
        FieldElement::from_int(&k, 3),
        FieldElement::from_rational(&k, rat(-2, 7)),
        FieldElement::generator(&k),
        FieldElement::from_power_series(&k, vec![rat(1, 2), int(5)]),
    ];
    for f in du_val() {
        let base = report(&f);
        for c in &scalars {
            let g = f.scale(c);
            let r = report(&g);
            assert_eq!(r, base);
        }
    }
}

#[test]
fn not_attained() {
    let tree = resolve(&gauss("x^2 + y^2 + z^2"), &Strategy::auto()).unwrap();
    assert_eq!(multiplicity(&tree, &int(7)), Err(ZetaError::NotAttained(int(7))));
}

#[test]
fn smooth_input_has_no_candidates() {
    let tree = resolve(&gauss("x + y^2"), &Strategy::auto()).unwrap();
    assert_eq!(lambda_uncapped(&tree).unwrap_err(), ZetaError::NoCandidates);
}
