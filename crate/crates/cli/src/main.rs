//! `lct`: pole indices of hypersurface singularities from the command line.
//!
//! Exit codes: 0 success (including audit mismatches), 1 invalid input,
//! 2 depth limit reached, 3 internal inconsistency, 4 unreliable estimate.

mod json;
mod text;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use lct_core::blowup::{resolve, ResolveError, ResolutionTree, Strategy, DEFAULT_MAX_DEPTH};
use lct_core::catalogue::{self, Family};
use lct_core::estimator::{estimate, EstimatorConfig, EstimatorError, Mode};
use lct_core::newton::lambda_newton;
use lct_core::parser::{parse_poly, parse_script, ParseError};
use lct_core::zeta::lambda_uncapped;
use lct_core::{FieldElement, NumberField, Poly, Rational, Variables};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lct", version, about = "Exact pole indices (h+1)/k of hypersurface singularities")]
struct Cli {
    /// Coefficient field as NAME:MINPOLY in t (e.g. j:t^2+t+1), or Q.
    #[arg(long, global = true, default_value = "i:t^2+1")]
    field: String,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y,z")]
    vars: String,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and normalize a polynomial.
    Parse { expr: String },
    /// Newton-polyhedron value lambda_NP = 1/t0.
    Newton { expr: String },
    /// Build a resolution tree.
    Resolve {
        expr: String,
        #[command(flatten)]
        res: ResolveArgs,
    },
    /// Pole index lambda with multiplicity, certification and Newton comparison.
    Pole {
        expr: String,
        #[command(flatten)]
        res: ResolveArgs,
    },
    /// Audit the du Val catalogue: claimed value, Newton oracle, engine.
    Verify {
        /// A, D, E6, E7 or E8.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Every member of the audit (A_1..A_20, D_4..D_12, E6, E7, E8).
        #[arg(long, conflicts_with_all = ["family", "n"])]
        all: bool,
    },
    /// Monte Carlo estimate of lambda from volume scaling.
    Estimate {
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-5)]
        tmin: f64,
        #[arg(long, default_value_t = 1e-2)]
        tmax: f64,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        min_hits: u64,
        /// Write (t, hits) pairs as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct ResolveArgs {
    /// Resolution script to follow.
    #[arg(long)]
    script: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: u32,
    /// Write the tree as a Graphviz file.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn parse(err: &ParseError, source: &str, what: &str) -> Self {
        Failure::input(format!("{what}: {}", err.annotate(source)))
    }

    fn resolve(err: &ResolveError, script: Option<&str>) -> Self {
        let code = match err {
            _ if err.is_internal() => 3,
            ResolveError::Script { error, .. } if matches!(**error, ResolveError::ScriptTooDeep(_)) => 2,
            _ => 1,
        };
        let message = match (err, script) {
            (ResolveError::Script { span, error }, Some(src)) => {
                let line = src.lines().nth(span.line - 1).unwrap_or("");
                format!(
                    "script {span}: {error}\n  {line}\n  {}{}",
                    " ".repeat(span.column - 1),
                    "^".repeat(span.length)
                )
            }
            _ => err.to_string(),
        };
        Failure { code, message }
    }
}

type Outcome = Result<u8, Failure>;

fn parse_field(spec: &str) -> Result<Arc<NumberField>, Failure> {
    if spec.eq_ignore_ascii_case("q") {
        return Ok(NumberField::rationals());
    }
    let (name, minpoly) = spec
        .split_once(':')
        .ok_or_else(|| Failure::input(format!("field `{spec}` is not NAME:MINPOLY")))?;
    let t = Variables::new(["t"]).expect("one variable");
    let p = parse_poly::<Rational>(minpoly, &(), &t).map_err(|e| Failure::parse(&e, minpoly, "minimal polynomial"))?;
    let degree = p.total_degree().unwrap_or(0) as usize;
    let coeffs: Vec<Rational> = (0..=degree)
        .map(|d| p.coefficient(&lct_core::ExponentVector::new(vec![d as u32])))
        .collect();
    NumberField::new(coeffs, name).map_err(|e| Failure::input(format!("field `{spec}`: {e}")))
}

fn parse_vars(spec: &str, field: &NumberField) -> Result<Variables, Failure> {
    let names: Vec<&str> = spec.split(',').map(str::trim).collect();
    if names.iter().any(|n| *n == field.generator_name()) {
        return Err(Failure::input(format!(
            "variable list `{spec}` contains the field generator `{}`",
            field.generator_name()
        )));
    }
    Variables::new(names).map_err(|e| Failure::input(format!("variables `{spec}`: {e}")))
}

/// Expression text, or the contents of a file for `@path`.
fn read_expr(expr: &str) -> Result<String, Failure> {
    match expr.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}"))),
        None => Ok(expr.to_string()),
    }
}

fn parse_input(cli: &Cli, expr: &str) -> Result<Poly, Failure> {
    let field = parse_field(&cli.field)?;
    let vars = parse_vars(&cli.vars, &field)?;
    let text = read_expr(expr)?;
    parse_poly::<FieldElement>(text.trim(), &field, &vars).map_err(|e| Failure::parse(&e, text.trim(), "polynomial"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn build_tree(f: &Poly, args: &ResolveArgs) -> Result<ResolutionTree<FieldElement>, Failure> {
    let (strategy, source) = match &args.script {
        Some(path) => {
            let src = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let script = parse_script(&src).map_err(|e| Failure::parse(&e, &src, "script"))?;
            (
                Strategy::Scripted {
                    script,
                    max_depth: args.max_depth,
                },
                Some(src),
            )
        }
        None => (
            Strategy::Auto {
                max_depth: args.max_depth,
            },
            None,
        ),
    };
    let tree = resolve(f, &strategy).map_err(|e| Failure::resolve(&e, source.as_deref()))?;
    if let Some(path) = &args.dot {
        write_file(path, &tree.to_dot())?;
    }
    Ok(tree)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Parse { expr } => {
            let f = parse_input(cli, expr)?;
            if cli.json {
                print_json(&json::ParseOutput::new(&f));
            } else {
                print!("{}", text::parse(&f));
            }
            Ok(0)
        }
        Command::Newton { expr } => {
            let f = parse_input(cli, expr)?;
            let data = lambda_newton(&f).map_err(|e| Failure::input(e.to_string()))?;
            if cli.json {
                print_json(&json::NewtonOutput::new(&data));
            } else {
                print!("{}", text::newton(&data));
            }
            Ok(0)
        }
        Command::Resolve { expr, res } => {
            let f = parse_input(cli, expr)?;
            let tree = build_tree(&f, res)?;
            if cli.json {
                print_json(&json::TreeOutput::new(&tree));
            } else {
                print!("{}", text::tree(&tree));
            }
            Ok(if tree.failed() { 2 } else { 0 })
        }
        Command::Pole { expr, res } => {
            let f = parse_input(cli, expr)?;
            let tree = build_tree(&f, res)?;
            let mut report = lambda_uncapped(&tree).map_err(|e| Failure::input(e.to_string()))?;
            if let Ok(newton) = lambda_newton(&f) {
                report.compare_newton(&newton);
            }
            if cli.json {
                print_json(&json::PoleOutput::new(&f, &report, &tree));
            } else {
                print!("{}", text::pole(&f, &report));
            }
            Ok(if report.failed { 2 } else { 0 })
        }
        Command::Verify { family, n, all } => {
            let members = if *all {
                catalogue::audit_members()
            } else {
                let Some(family) = family else {
                    return Err(Failure::input("pass --family F [--n N] or --all"));
                };
                let family: Family = family.parse().map_err(|e: catalogue::CatalogueError| Failure::input(e.to_string()))?;
                let n = catalogue::parameter(family, *n).map_err(|e| Failure::input(e.to_string()))?;
                vec![(family, n)]
            };
            let reports = members
                .into_iter()
                .map(|(fam, n)| {
                    catalogue::verify(fam, n).map_err(|e| match e {
                        catalogue::CatalogueError::Resolve(r) => Failure::resolve(&r, None),
                        other => Failure {
                            code: 3,
                            message: other.to_string(),
                        },
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cli.json {
                print_json(&json::VerifyOutput::new(&reports));
            } else {
                print!("{}", text::verify(&reports));
            }
            Ok(0)
        }
        Command::Estimate {
            expr,
            mode,
            samples,
            seed,
            tmin,
            tmax,
            levels,
            radius,
            min_hits,
            csv,
        } => {
            let f = parse_input(cli, expr)?;
            let mode = match mode {
                ModeArg::Real => Mode::Real,
                ModeArg::Complex => Mode::Complex,
            };
            let config = EstimatorConfig {
                mode,
                samples_per_level: *samples,
                t_min: *tmin,
                t_max: *tmax,
                points: *levels,
                box_radius: *radius,
                seed: *seed,
                min_hits: *min_hits,
            };
            let (est, reason) = match estimate::<f64, _>(&f, &config) {
                Ok(est) => (est, None),
                Err(EstimatorError::Unreliable { reason, partial }) => (*partial, Some(reason)),
                Err(e) => return Err(Failure::input(e.to_string())),
            };
            if let Some(path) = csv {
                write_csv(path, &est.hit_counts)?;
            }
            if cli.json {
                print_json(&json::EstimateOutput::new(&f, mode, *seed, &est, reason.clone()));
            } else {
                print!("{}", text::estimate(&f, mode, &est, reason.as_deref()));
            }
            Ok(if reason.is_some() { 4 } else { 0 })
        }
    }
}

fn write_csv(path: &Path, rows: &[(f64, u64)]) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::input(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["t", "hits"]).map_err(io)?;
    for (t, hits) in rows {
        w.serialize((t, hits)).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    // clap's own usage errors would exit with 2, which is reserved.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
