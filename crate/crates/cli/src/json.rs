//! JSON shapes of the command outputs; `docs/schema.json` describes them.
//! Exact rationals are always `{"num": int, "den": int}`.

use lct_core::blowup::{ChartStatus, ResolutionTree};
use lct_core::catalogue::{Agreement, VerifyReport};
use lct_core::estimator::{Estimate, Mode};
use lct_core::newton::{NewtonData, NONDEGENERACY_CAVEAT};
use lct_core::parser::format_poly;
use lct_core::zeta::PoleReport;
use lct_core::{Coefficient, FieldElement, NumberField, Poly, Rational};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

fn integer<T: ToPrimitive + ToString>(n: &T) -> Value {
    // Values beyond 64 bits fall back to a decimal string.
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rat {
    num: Value,
    den: Value,
}

impl From<&Rational> for Rat {
    fn from(q: &Rational) -> Self {
        Rat {
            num: integer(q.numer()),
            den: integer(q.denom()),
        }
    }
}

#[derive(Serialize)]
pub struct Field {
    generator: String,
    minimal_polynomial: Vec<Rat>,
}

impl From<&NumberField> for Field {
    fn from(k: &NumberField) -> Self {
        Field {
            generator: k.generator_name().to_string(),
            minimal_polynomial: k.minimal_polynomial().iter().map(Rat::from).collect(),
        }
    }
}

#[derive(Serialize)]
struct Term {
    exponents: Vec<u32>,
    /// Coordinates in the power basis of the field.
    coefficient: Vec<Rat>,
}

#[derive(Serialize)]
pub struct ParseOutput {
    polynomial: String,
    variables: Vec<String>,
    field: Field,
    total_degree: Option<u32>,
    terms: Vec<Term>,
}

impl ParseOutput {
    pub fn new(f: &Poly) -> Self {
        ParseOutput {
            polynomial: format_poly(f),
            variables: f.variables().names().to_vec(),
            field: Field::from(f.ring().as_ref()),
            total_degree: f.total_degree(),
            terms: f
                .terms()
                .map(|(e, c): (_, &FieldElement)| Term {
                    exponents: e.as_slice().to_vec(),
                    coefficient: c.coords().iter().map(Rat::from).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct Normal {
    w: Vec<Rat>,
    n: Rat,
}

#[derive(Serialize)]
pub struct NewtonOutput {
    support: Vec<Vec<u32>>,
    facet_normals: Vec<Normal>,
    t0: Rat,
    lambda_np: Rat,
    optimal_normal: Option<Normal>,
    caveat: &'static str,
}

impl NewtonOutput {
    pub fn new(d: &NewtonData) -> Self {
        let normal = |n: &lct_core::newton::FacetNormal| Normal {
            w: n.w.iter().map(Rat::from).collect(),
            n: Rat::from(&n.n),
        };
        NewtonOutput {
            support: d.support.iter().map(|e| e.as_slice().to_vec()).collect(),
            facet_normals: d.facet_normals.iter().map(normal).collect(),
            t0: Rat::from(&d.t0),
            lambda_np: Rat::from(&d.lambda_np),
            optimal_normal: d.optimal_normal().map(normal),
            caveat: NONDEGENERACY_CAVEAT,
        }
    }
}

#[derive(Serialize)]
struct DivisorOut {
    variable: String,
    divisor: String,
    k: u32,
    h: u32,
    copies: u32,
}

#[derive(Serialize)]
struct NodeOut {
    id: usize,
    parent: Option<usize>,
    children: Vec<usize>,
    path: String,
    depth: u32,
    status: &'static str,
    transversal: bool,
    orbit: u32,
    strict: String,
    divisors: Vec<DivisorOut>,
}

#[derive(Serialize)]
pub struct TreeOutput {
    root_polynomial: String,
    failed: bool,
    certified: bool,
    strategy_log: Vec<String>,
    nodes: Vec<NodeOut>,
}

impl TreeOutput {
    pub fn new<C: Coefficient>(tree: &ResolutionTree<C>) -> Self {
        TreeOutput {
            root_polynomial: format_poly(tree.root_polynomial()),
            failed: tree.failed(),
            certified: tree.is_certified(),
            strategy_log: tree.strategy_log().to_vec(),
            nodes: tree
                .nodes()
                .iter()
                .enumerate()
                .map(|(id, n)| NodeOut {
                    id,
                    parent: n.parent,
                    children: n.children.clone(),
                    path: n.chart.path_string(),
                    depth: n.chart.depth(),
                    status: n.chart.status().as_str(),
                    transversal: n.chart.status() == ChartStatus::SmoothStrict && n.chart.transversal(),
                    orbit: n.chart.orbit(),
                    strict: format_poly(n.chart.strict()),
                    divisors: n
                        .chart
                        .divisors()
                        .map(|(v, d)| DivisorOut {
                            variable: v.to_string(),
                            divisor: d.id.to_string(),
                            k: d.k,
                            h: d.h,
                            copies: d.copies,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct Candidate {
    divisor: String,
    chart: String,
    variable: String,
    k: u32,
    h: u32,
    copies: u32,
    value: Rat,
}

#[derive(Serialize)]
pub struct PoleOutput {
    polynomial: String,
    lambda_uncapped: Rat,
    lambda_capped: Rat,
    multiplicity: u32,
    certified: bool,
    failed: bool,
    newton_value: Option<Rat>,
    newton_agrees: Option<bool>,
    newton_caveat: &'static str,
    candidates: Vec<Candidate>,
    tree: TreeOutput,
}

impl PoleOutput {
    pub fn new(f: &Poly, report: &PoleReport, tree: &ResolutionTree<FieldElement>) -> Self {
        PoleOutput {
            polynomial: format_poly(f),
            lambda_uncapped: Rat::from(&report.lambda_uncapped),
            lambda_capped: Rat::from(&report.lambda_capped),
            multiplicity: report.multiplicity,
            certified: report.certified,
            failed: report.failed,
            newton_value: report.newton_value.as_ref().map(Rat::from),
            newton_agrees: report.newton_agrees,
            newton_caveat: NONDEGENERACY_CAVEAT,
            candidates: report
                .candidates
                .iter()
                .map(|c| Candidate {
                    divisor: c.divisor.to_string(),
                    chart: c.chart.clone(),
                    variable: c.variable.clone(),
                    k: c.k,
                    h: c.h,
                    copies: c.copies,
                    value: Rat::from(&c.value()),
                })
                .collect(),
            tree: TreeOutput::new(tree),
        }
    }
}

#[derive(Serialize)]
struct ClaimOut {
    value: Rat,
    formula: &'static str,
}

#[derive(Serialize)]
struct VerifyRow {
    family: String,
    n: u32,
    label: String,
    claims: Vec<ClaimOut>,
    notes: Vec<&'static str>,
    newton: Rat,
    engine: Rat,
    engine_certified: bool,
    failed: bool,
    claim_vs_newton: &'static str,
    engine_vs_newton: &'static str,
}

#[derive(Serialize)]
pub struct VerifyOutput {
    rows: Vec<VerifyRow>,
}

impl VerifyOutput {
    pub fn new(reports: &[VerifyReport]) -> Self {
        let status = |a| match a {
            Agreement::Match => "match",
            Agreement::Mismatch => "mismatch",
        };
        VerifyOutput {
            rows: reports
                .iter()
                .map(|r| VerifyRow {
                    family: r.family.to_string(),
                    n: r.n,
                    label: r.label(),
                    claims: r
                        .claims
                        .iter()
                        .map(|c| ClaimOut {
                            value: Rat::from(&c.value),
                            formula: c.formula,
                        })
                        .collect(),
                    notes: r.notes.clone(),
                    newton: Rat::from(&r.newton_value),
                    engine: Rat::from(&r.engine_value),
                    engine_certified: r.engine_certified,
                    failed: r.failed,
                    claim_vs_newton: status(r.claim_vs_newton),
                    engine_vs_newton: status(r.engine_vs_newton),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct HitCount {
    t: f64,
    hits: u64,
}

#[derive(Serialize)]
pub struct EstimateOutput {
    polynomial: String,
    mode: &'static str,
    seed: u64,
    reliable: bool,
    reason: Option<String>,
    lambda_hat: Option<f64>,
    stderr: Option<f64>,
    levels_used: usize,
    samples_per_level: u64,
    hit_counts: Vec<HitCount>,
}

impl EstimateOutput {
    pub fn new(f: &Poly, mode: Mode, seed: u64, est: &Estimate<f64>, reason: Option<String>) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        EstimateOutput {
            polynomial: format_poly(f),
            mode: mode.as_str(),
            seed,
            reliable: reason.is_none(),
            reason,
            lambda_hat: finite(est.lambda_hat),
            stderr: finite(est.stderr),
            levels_used: est.levels_used,
            samples_per_level: est.samples_per_level,
            hit_counts: est.hit_counts.iter().map(|&(t, hits)| HitCount { t, hits }).collect(),
        }
    }
}
