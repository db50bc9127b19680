use proptest::prelude::*;

use super::*;
use crate::algebra::{rat, ExponentVector, FieldElement, NumberField, Polynomial, Variables};

type P = Polynomial<FieldElement>;

fn gauss(s: &str) -> P {
    parse_poly(s, &NumberField::gaussian(), &Variables::xyz()).unwrap()
}

#[test]
fn d4_support() {
    let f = gauss("x^2 + y^2*z + z^3");
    let support: Vec<_> = f.support().into_iter().map(|e| e.as_slice().to_vec()).collect();
    assert_eq!(support, vec![vec![2, 0, 0], vec![0, 2, 1], vec![0, 0, 3]]);
}

#[test]
fn d4_product_of_linear_forms() {
    assert_eq!(gauss("x^2 + (y - i*z)*(y + i*z)*z"), gauss("x^2 + y^2*z + z^3"));
}

#[test]
fn dangling_caret_points_at_column_two() {
    let err = parse_expr("x^").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    assert_eq!((err.span.line, err.span.column), (1, 2));
}

#[test]
fn error_kinds() {
    let k = NumberField::gaussian();
    let v = Variables::xyz();
    let e = parse_poly::<FieldElement>("x + w", &k, &v).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("w".into()));
    assert_eq!(e.span, SourceSpan::new(1, 5, 1));
    let e = parse_poly::<FieldElement>("x^-2", &k, &v).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
    let e = parse_poly::<FieldElement>("x^(-2)", &k, &v).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
    // juxtaposition is not multiplication
    assert!(parse_poly::<FieldElement>("2 x", &k, &v).is_err());
    assert!(parse_poly::<FieldElement>("x^2^3", &k, &v).is_err());
    assert!(parse_poly::<FieldElement>("x/2", &k, &v).is_err());
    assert!(parse_poly::<FieldElement>("(x + y", &k, &v).is_err());
    assert!(parse_poly::<FieldElement>("", &k, &v).is_err());
    let e = parse_poly::<FieldElement>("x +\n y $", &k, &v).unwrap_err();
    assert_eq!((e.span.line, e.span.column), (2, 4));
}

#[test]
fn unary_minus_binds_looser_than_caret() {
    assert_eq!(gauss("-x^2"), -&gauss("x^2"));
    assert_eq!(gauss("(-x)^2"), gauss("x^2"));
    assert_eq!(gauss("2^3*x"), gauss("8*x"));
    assert_eq!(gauss("x^0"), gauss("1"));
}

#[test]
fn canonical_formatting() {
    assert_eq!(format_poly(&gauss("z^3 + y^2 + x^2")), "x^2 + y^2 + z^3");
    assert_eq!(format_poly(&gauss("0*x")), "0");
    assert_eq!(format_poly(&gauss("1 - x*y + 3/2*i*z^2")), "1 - x*y + 3/2*i*z^2");
    assert_eq!(format_poly(&gauss("-x - 1")), "-1 - x");
    assert_eq!(format_poly(&gauss("(2 + i)*x - i")), "-i + (2 + i)*x");

    let k = NumberField::eisenstein();
    let v = Variables::xyz();
    let j: P = parse_poly("j", &k, &v).unwrap();
    let f = &(&j * &j) * &parse_poly("x", &k, &v).unwrap();
    assert_eq!(format_poly(&f), "(-1 - j)*x");
    assert_eq!(parse_poly::<FieldElement>(&format_poly(&f), &k, &v).unwrap(), f);
}

#[test]
fn coefficient_formatting() {
    let k = NumberField::gaussian();
    let c = FieldElement::from_power_series(&k, vec![rat(-1, 2), rat(1, 1)]);
    assert_eq!(format_coefficient(&c), "-1/2 + i");
    assert_eq!(format_coefficient(&rat(-3, 4)), "-3/4");
}

#[test]
fn script_examples() {
    let s = parse_script("blowup x y z\nchart z").unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(
        s.steps[0].step,
        ScriptStep::Blowup {
            center: vec!["x".into(), "y".into(), "z".into()]
        }
    );
    assert_eq!(s.steps[1].step, ScriptStep::Chart { var: "z".into() });

    let s = parse_script("subst z := z + y*z^4").unwrap();
    let ScriptStep::Subst { var, expr } = &s.steps[0].step else {
        panic!("expected subst");
    };
    assert_eq!(var, "z");
    let rhs: P = expr.to_polynomial(&NumberField::gaussian(), &Variables::xyz()).unwrap();
    assert_eq!(rhs, gauss("z + y*z^4"));

    let e = parse_script("chart z").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::ChartWithoutBlowup);
    assert_eq!(e.span, SourceSpan::new(1, 1, 5));
}

#[test]
fn script_comments_and_errors() {
    let s = parse_script("# A_3\n\n  blowup x y z   # origin\n  chart z\norbit 2\nstop\n").unwrap();
    assert_eq!(s.len(), 4);
    assert_eq!(s.steps[0].span, SourceSpan::new(3, 3, 6));
    assert_eq!(s.steps[2].step, ScriptStep::Orbit { copies: 2 });
    assert_eq!(s.to_string(), "blowup x y z\nchart z\norbit 2\nstop\n");

    let e = parse_script("blowup x y\norbit 2").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::BlowupWithoutChart);
    let e = parse_script("frobnicate x").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownCommand("frobnicate".into()));
    let e = parse_script("subst z = z + 1").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::MalformedSubstitution(_)));
    let e = parse_script("subst z := z +").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::MalformedSubstitution(_)));
    assert_eq!(e.span.line, 1);
    assert!(e.span.column >= 12);
    assert!(parse_script("stop\nblowup x y").is_err());
    assert!(parse_script("orbit 0").is_err());
    assert!(parse_script("blowup x x").is_err());
    // a trailing blowup is allowed; the driver resolves every child
    assert!(parse_script("blowup x y z").is_ok());
}

#[test]
fn annotate_marks_span() {
    let e = parse_expr("x^").unwrap_err();
    assert!(e.annotate("x^").ends_with("\n  x^\n   ^"));
}

fn arb_poly() -> impl Strategy<Value = P> {
    let coeff = (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6);
    let term = (prop::collection::vec(0u32..=9, 3), coeff);
    prop::collection::vec(term, 0..=6).prop_map(|terms| {
        let k = NumberField::gaussian();
        let v = Variables::xyz();
        Polynomial::from_terms(
            &v,
            &k,
            terms.into_iter().map(|(e, (a, b, c, d))| {
                (
                    ExponentVector::new(e),
                    FieldElement::from_power_series(&k, vec![rat(a, b), rat(c, d)]),
                )
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn format_parse_round_trip(f in arb_poly()) {
        let text = format_poly(&f);
        let back: P = parse_poly(&text, &NumberField::gaussian(), &Variables::xyz()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(format_poly(&back), text);
    }

    #[test]
    fn parse_errors_point_inside_input(s in "[xyzi0-9+*^()/ -]{1,24}") {
        if let Err(e) = parse_expr(&s) {
            let line = s.lines().nth(e.span.line - 1).unwrap_or("");
            prop_assert!(e.span.column >= 1);
            prop_assert!(e.span.column <= line.chars().count().max(1));
        }
    }
}
