//! The acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line straight to stderr, so the verdicts show up even when
//! libtest captures output.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use lct_core::algebra::{int, rat};
use lct_core::blowup::{resolve, verify_jacobian, Chart, ChartStatus, ResolutionTree, Strategy};
use lct_core::catalogue::{audit_members, claims, generator, scripted_tree, Family};
use lct_core::estimator::{estimate, EstimatorConfig, EstimatorError, Mode};
use lct_core::newton::lambda_newton;
use lct_core::parser::{format_poly, parse_poly};
use lct_core::zeta::{lambda_uncapped, PoleReport};
use lct_core::{ExponentVector, FieldElement, NumberField, Poly, Polynomial, Rational, Variables};
use proptest::prelude::{prop, prop_assert, prop_assert_eq, TestCaseError};
use proptest::strategy::Strategy as Gen;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

/// Prints the verdict line, then fails the test on a miss.
fn verdict(id: &str, title: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let in_time = elapsed < limit;
    let ok = failures.is_empty() && in_time;
    let mut line = format!(
        "{} {id} {title} ({:.2} s, limit {} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !in_time {
        line.push_str(" over time");
    }
    for f in failures.iter().take(5) {
        line.push_str("\n     ");
        line.push_str(f);
    }
    let _ = writeln!(std::io::stderr().lock(), "{line}");
    assert!(ok, "{line}");
}

fn gauss(s: &str) -> Poly {
    parse_poly(s, &NumberField::gaussian(), &Variables::xyz()).unwrap()
}

fn q(n: u32, d: u32) -> Rational {
    rat(n as i64, d as i64)
}

fn child<'a>(children: &'a [Chart<FieldElement>], var: &str) -> &'a Chart<FieldElement> {
    let label = format!("U_{var}");
    children.iter().find(|c| c.path().last() == Some(&label)).unwrap()
}

fn jacobian_failures(name: &str, tree: &ResolutionTree<FieldElement>, out: &mut Vec<String>) {
    for node in tree.nodes() {
        if !verify_jacobian(&node.chart) {
            out.push(format!("{name}: Jacobian check fails at {}", node.chart.path_string()));
        }
    }
}

#[test]
fn c1_chart_reproduction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=8u32 {
        let root = Chart::root(&gauss(&format!("x^2 + y^2 + z^{}", n + 1))).unwrap();
        let children = root.blowup_origin(&["x", "y", "z"]).unwrap();
        let expected = [
            ("x", format!("x^2*(1 + y^2 + x^{}*z^{})", n - 1, n + 1)),
            ("y", format!("y^2*(x^2 + 1 + y^{}*z^{})", n - 1, n + 1)),
            ("z", format!("z^2*(x^2 + y^2 + z^{})", n - 1)),
        ];
        for (var, total) in expected {
            let got = child(&children, var).total_transform();
            if got != gauss(&total) {
                failures.push(format!("A_{n} U_{var}: {} != {total}", format_poly(&got)));
            }
        }
    }
    verdict("c1", "depth-1 charts of A_2..A_8", &failures, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn c2_jacobian_bookkeeping() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // A chain of k origin blow-ups, always continuing in the z chart.
    let mut chart = Chart::root(&gauss("x^2 + y^2 + z^30")).unwrap();
    for k in 1..=10u32 {
        let children = chart.blowup_origin(&["x", "y", "z"]).unwrap();
        for c in &children {
            if !verify_jacobian(c) {
                failures.push(format!("chain depth {k}: {}", c.path_string()));
            }
        }
        chart = child(&children, "z").clone();
        if chart.h("z") != 2 * k {
            failures.push(format!("chain depth {k}: h = {}, expected {}", chart.h("z"), 2 * k));
        }
    }

    let mut trees = Vec::new();
    for (family, n) in audit_members() {
        trees.push((format!("{family}_{n} scripted"), scripted_tree(family, n).unwrap()));
        trees.push((format!("{family}_{n} auto"), resolve(&generator(family, n).unwrap(), &Strategy::auto()).unwrap()));
    }
    let script = lct_core::parser::parse_script("blowup x y z\nchart z\nsubst x := x + y^2 + z\nsubst y := y - 3*x*z\n").unwrap();
    let subst = Strategy::Scripted { script, max_depth: 12 };
    trees.push(("A_5 with substitutions".into(), resolve(&gauss("x^2 + y^2 + z^6"), &subst).unwrap()));

    let mut affine = 0;
    for (name, tree) in &trees {
        jacobian_failures(name, tree, &mut failures);
        affine += tree.nodes().iter().filter(|n| n.chart.path_string().contains("subst")).count();
    }
    if affine == 0 {
        failures.push("no tree contains an affine substitution".into());
    }
    verdict("c2", "h = 2k on chains, Jacobian on every node", &failures, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn c3_oracle_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for a in 2..=9u32 {
        for b in 2..=9u32 {
            for c in 2..=9u32 {
                let f = gauss(&format!("x^{a} + y^{b} + z^{c}"));
                let got = lambda_newton(&f).unwrap().lambda_np;
                let want = q(1, a) + q(1, b) + q(1, c);
                if got != want {
                    failures.push(format!("({a},{b},{c}): {got} != {want}"));
                }
            }
        }
    }
    verdict("c3", "Brieskorn lambda_NP = 1/a + 1/b + 1/c", &failures, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn c4_a_family_odd() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in (1..=19u32).step_by(2) {
        let f = generator(Family::A, n).unwrap();
        let want = q(n + 2, n + 1);
        let newton = lambda_newton(&f).unwrap().lambda_np;
        if newton != want {
            failures.push(format!("A_{n}: lambda_NP {newton}"));
        }
        if !claims(Family::A, n).unwrap().iter().any(|c| c.value == want) {
            failures.push(format!("A_{n}: claim differs from {want}"));
        }
        let trees = [
            ("scripted", scripted_tree(Family::A, n).unwrap()),
            ("auto", resolve(&f, &Strategy::auto()).unwrap()),
        ];
        for (how, tree) in &trees {
            let report = lambda_uncapped(tree).unwrap();
            let all_unit = tree.leaves().all(|c| c.status() == ChartStatus::UnitStrict);
            if tree.failed() || !all_unit || !report.certified {
                failures.push(format!("A_{n} {how}: leaves not all UnitStrict"));
            }
            if report.lambda_uncapped != want {
                failures.push(format!("A_{n} {how}: lambda {}", report.lambda_uncapped));
            }
        }
    }
    verdict("c4", "A_n, n odd: certified (n+2)/(n+1)", &failures, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn c5_a_family_even() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in (2..=20u32).step_by(2) {
        let f = generator(Family::A, n).unwrap();
        let newton = lambda_newton(&f).unwrap().lambda_np;
        let chain = q(n + 1, n);
        if newton != q(n + 2, n + 1) || newton >= chain {
            failures.push(format!("A_{n}: lambda_NP {newton}"));
        }
        for (how, tree) in [
            ("scripted", scripted_tree(Family::A, n).unwrap()),
            ("auto", resolve(&f, &Strategy::auto()).unwrap()),
        ] {
            let report = lambda_uncapped(&tree).unwrap();
            if report.lambda_uncapped != chain || report.certified {
                failures.push(format!(
                    "A_{n} {how}: lambda {} certified {}",
                    report.lambda_uncapped, report.certified
                ));
            }
        }
        let mut prev: Option<Rational> = None;
        for depth in 1..=n / 2 + 2 {
            let tree = resolve(&f, &Strategy::Auto { max_depth: depth }).unwrap();
            let lambda = lambda_uncapped(&tree).unwrap().lambda_uncapped;
            if prev.as_ref().is_some_and(|p| &lambda > p) {
                failures.push(format!("A_{n}: lambda rises to {lambda} at depth {depth}"));
            }
            prev = Some(lambda);
        }
    }
    verdict("c5", "A_n, n even: uncertified (n+1)/n above lambda_NP", &failures, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn c6_d5_script() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tree = scripted_tree(Family::D, 5).unwrap();
    match tree.nodes().iter().find(|n| n.chart.path_string().contains("subst")) {
        Some(node) if node.chart.strict() == &gauss("x^2 + y*z") => {}
        Some(node) => failures.push(format!("strict is {}", format_poly(node.chart.strict()))),
        None => failures.push("no substituted chart".into()),
    }
    verdict("c6", "D_5 after chart y and z := z + y*z^4 is x^2 + y*z", &failures, start.elapsed(), Duration::from_secs(1));
}

fn rat_of(v: &Value) -> Rational {
    rat(v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn c7_catalogue_audit() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lct"))
            .args(["verify", "--all", "--json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    if first.stdout != second.stdout {
        failures.push("two runs differ".into());
    }
    if first.status.code() != Some(0) {
        failures.push(format!("exit status {:?}", first.status.code()));
    }
    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    if rows.len() != audit_members().len() {
        failures.push(format!("{} rows", rows.len()));
    }
    let flagged = [("D_4", q(4, 3)), ("D_5", q(6, 5)), ("E6", q(12, 13)), ("E7", q(5, 6)), ("E8", q(9, 8))];
    for row in rows {
        let label = row["label"].as_str().unwrap();
        let n = row["n"].as_u64().unwrap() as u32;
        let oracle = match row["family"].as_str().unwrap() {
            "A" => q(n + 2, n + 1),
            "D" => q(2 * n - 1, 2 * n - 2),
            "E6" => q(13, 12),
            "E7" => q(19, 18),
            _ => q(31, 30),
        };
        let newton = rat_of(&row["newton"]);
        if newton != oracle {
            failures.push(format!("{label}: oracle column {newton}, expected {oracle}"));
        }
        let claims: Vec<Rational> = row["claims"].as_array().unwrap().iter().map(|c| rat_of(&c["value"])).collect();
        let expected_flag = if claims.contains(&oracle) { "match" } else { "mismatch" };
        if row["claim_vs_newton"] != expected_flag {
            failures.push(format!("{label}: claim flagged {}", row["claim_vs_newton"]));
        }
        if let Some((_, value)) = flagged.iter().find(|(l, _)| *l == label) {
            if !claims.contains(value) || row["claim_vs_newton"] != "mismatch" {
                failures.push(format!("{label}: claim {value} not flagged"));
            }
        }
    }
    verdict("c7", "verify --all oracle values and flagged claims", &failures, start.elapsed(), Duration::from_secs(30));
}

fn monte_carlo(id: &str, title: &str, f: &str, mode: Mode, band: (f64, f64)) {
    let start = Instant::now();
    let config = EstimatorConfig {
        mode,
        ..EstimatorConfig::default()
    };
    let mut failures = Vec::new();
    match estimate::<f64, _>(&gauss(f), &config) {
        Ok(est) if (band.0..=band.1).contains(&est.lambda_hat) => {}
        Ok(est) => failures.push(format!("lambda_hat {:.4} outside [{}, {}]", est.lambda_hat, band.0, band.1)),
        Err(EstimatorError::Unreliable { reason, partial }) => {
            let hits: Vec<String> = partial.hit_counts.iter().map(|(t, h)| format!("{t:.1e}:{h}")).collect();
            failures.push(format!("unreliable: {reason}; hits {}", hits.join(" ")));
        }
        Err(e) => failures.push(e.to_string()),
    }
    verdict(id, title, &failures, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn c8a_complex_z2() {
    monte_carlo("c8a", "complex z^2 in [0.45, 0.55]", "z^2", Mode::Complex, (0.45, 0.55));
}

#[test]
fn c8b_real_x2() {
    monte_carlo("c8b", "real x^2 in [0.45, 0.55]", "x^2", Mode::Real, (0.45, 0.55));
}

#[test]
fn c8c_complex_a1() {
    monte_carlo("c8c", "complex x^2 + y^2 + z^2 in [0.9, 1.1]", "x^2 + y^2 + z^2", Mode::Complex, (0.9, 1.1));
}

type Term = (Vec<u32>, (i64, i64, i64, i64));

fn build(terms: Vec<Term>) -> Poly {
    let k = NumberField::gaussian();
    Polynomial::from_terms(
        &Variables::xyz(),
        &k,
        terms.into_iter().map(|(e, (a, b, c, d))| {
            (
                ExponentVector::new(e),
                FieldElement::from_power_series(&k, vec![rat(a, b), rat(c, d)]),
            )
        }),
    )
}

fn arb_poly(max_terms: usize, max_exp: u32) -> impl Gen<Value = Poly> {
    let coeff = (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6);
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), coeff), 0..=max_terms).prop_map(build)
}

fn run_property<S: Gen>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
    failures: &mut Vec<String>,
) {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    if let Err(e) = runner.run(&strategy, test) {
        failures.push(format!("{name}: {e}"));
    }
}

fn pole_report(f: &Poly) -> PoleReport {
    let mut r = lambda_uncapped(&resolve(f, &Strategy::auto()).unwrap()).unwrap();
    r.compare_newton(&lambda_newton(f).unwrap());
    r
}

#[test]
fn c9_property_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let k = NumberField::gaussian();
    let xyz = Variables::xyz();

    run_property(
        "parser round trip",
        1000,
        arb_poly(6, 9),
        |f| {
            let text = format_poly(&f);
            let back: Poly = parse_poly(&text, &NumberField::gaussian(), &Variables::xyz()).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(format_poly(&back), text);
            Ok(())
        },
        &mut failures,
    );

    run_property(
        "ring axioms",
        500,
        (arb_poly(5, 3), arb_poly(5, 3), arb_poly(5, 3)),
        |(a, b, c)| {
            let zero = Polynomial::zero(&Variables::xyz(), &NumberField::gaussian());
            let one = Polynomial::one(&Variables::xyz(), &NumberField::gaussian());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &zero, a.clone());
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a - &a).is_zero());
            Ok(())
        },
        &mut failures,
    );

    run_property(
        "substitution homomorphism",
        500,
        (arb_poly(4, 2), arb_poly(4, 2), [arb_poly(3, 2), arb_poly(3, 2), arb_poly(3, 2)]),
        |(a, b, phi)| {
            let sum = (&a + &b).compose(&phi).unwrap();
            prop_assert_eq!(sum, &a.compose(&phi).unwrap() + &b.compose(&phi).unwrap());
            let prod = (&a * &b).compose(&phi).unwrap();
            prop_assert_eq!(prod, &a.compose(&phi).unwrap() * &b.compose(&phi).unwrap());
            Ok(())
        },
        &mut failures,
    );

    for (family, n) in audit_members() {
        let f = generator(family, n).unwrap();
        let normal = lambda_newton(&f).unwrap().optimal_normal().unwrap().clone();
        let mut lhs = Polynomial::zero(&xyz, &k);
        for (i, w) in normal.w.iter().enumerate() {
            let xi = Polynomial::var_at(&xyz, &k, i);
            lhs = &lhs + &(&xi * &f.derivative(i)).scale(&FieldElement::from_rational(&k, w.clone()));
        }
        if lhs != f.scale(&FieldElement::from_rational(&k, normal.n.clone())) {
            failures.push(format!("Euler identity fails for {family}_{n}"));
        }
    }

    let scalars = [
        FieldElement::from_int(&k, 3),
        FieldElement::from_rational(&k, rat(-2, 7)),
        FieldElement::generator(&k),
        FieldElement::from_power_series(&k, vec![rat(1, 2), int(5)]),
    ];
    for (family, n) in audit_members().into_iter().filter(|&(_, n)| n <= 10) {
        let f = generator(family, n).unwrap();
        let base = pole_report(&f);
        for c in &scalars {
            if pole_report(&f.scale(c)) != base {
                failures.push(format!("{family}_{n}: report changes under scaling by {c}"));
            }
        }
    }
    verdict("c9", "property suites", &failures, start.elapsed(), Duration::from_secs(60));
}
