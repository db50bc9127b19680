//! Plain-text renderings.

use std::fmt::Write;

use lct_core::blowup::ResolutionTree;
use lct_core::catalogue::{Agreement, VerifyReport};
use lct_core::estimator::{Estimate, Mode};
use lct_core::newton::{NewtonData, NONDEGENERACY_CAVEAT};
use lct_core::parser::format_poly;
use lct_core::zeta::PoleReport;
use lct_core::{Coefficient, Poly, Rational};

fn vector(w: &[Rational]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn parse(f: &Poly) -> String {
    let mut out = format!("{}\n", format_poly(f));
    let _ = writeln!(
        out,
        "terms: {}, degree: {}",
        f.num_terms(),
        f.total_degree().map_or("-".into(), |d| d.to_string())
    );
    out
}

pub fn newton(d: &NewtonData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lambda_NP  {}", d.lambda_np);
    let _ = writeln!(out, "t0         {}", d.t0);
    if let Some(n) = d.optimal_normal() {
        let _ = writeln!(out, "normal     w = {}, N = {}", vector(&n.w), n.n);
    }
    let _ = writeln!(out, "facets:");
    for n in &d.facet_normals {
        let _ = writeln!(out, "  w = {:<16} N = {:<4} N/|w| = {}", vector(&n.w), n.n.to_string(), n.t_bound());
    }
    let _ = writeln!(out, "note: {NONDEGENERACY_CAVEAT}");
    out
}

pub fn tree<C: Coefficient>(tree: &ResolutionTree<C>) -> String {
    let mut out = String::new();
    for node in tree.nodes() {
        let c = &node.chart;
        let indent = "  ".repeat(c.path().len() - 1);
        let last = c.path().last().map(String::as_str).unwrap_or("root");
        let divisors: Vec<String> = c
            .divisors()
            .map(|(v, d)| {
                let copies = if d.copies > 1 { format!(" x{}", d.copies) } else { String::new() };
                format!("{v}: k={} h={}{copies}", d.k, d.h)
            })
            .collect();
        let _ = writeln!(
            out,
            "{indent}{last}  [{}]  strict: {}  {{{}}}",
            c.status(),
            format_poly(c.strict()),
            divisors.join(", ")
        );
    }
    if tree.failed() {
        let _ = writeln!(out, "depth limit reached: resolution incomplete");
    }
    out
}

pub fn pole(f: &Poly, r: &PoleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polynomial    {}", format_poly(f));
    let _ = writeln!(out, "lambda        {} (uncapped)", r.lambda_uncapped);
    let _ = writeln!(out, "lct           {} (capped)", r.lambda_capped);
    let _ = writeln!(out, "multiplicity  {}", r.multiplicity);
    let status = if r.failed {
        "FAILED (depth limit)"
    } else if r.certified {
        "certified"
    } else {
        "UNCERTIFIED"
    };
    let _ = writeln!(out, "status        {status}");
    match (&r.newton_value, r.newton_agrees) {
        (Some(v), Some(agrees)) => {
            let _ = writeln!(out, "newton        {v} ({})", if agrees { "agrees" } else { "differs" });
        }
        _ => {
            let _ = writeln!(out, "newton        n/a");
        }
    }
    let _ = writeln!(out, "candidates:");
    for c in &r.candidates {
        let copies = if c.copies > 1 { format!(" x{}", c.copies) } else { String::new() };
        let _ = writeln!(
            out,
            "  {:<8} {:<24} k={} h={}{copies}  ({}=0 in {})",
            c.value().to_string(),
            c.divisor.to_string(),
            c.k,
            c.h,
            c.variable,
            c.chart
        );
    }
    out
}

pub fn verify(reports: &[VerifyReport]) -> String {
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let claims: Vec<String> = r.claims.iter().map(|c| c.value.to_string()).collect();
            let engine = format!(
                "{}{}",
                r.engine_value,
                if r.engine_certified { "" } else { " (uncert.)" }
            );
            let flag = |a: Agreement| match a {
                Agreement::Match => "match",
                Agreement::Mismatch => "MISMATCH",
            };
            [
                r.family.to_string(),
                r.n.to_string(),
                claims.join(" or "),
                r.newton_value.to_string(),
                engine,
                format!("claim {} / engine {}", flag(r.claim_vs_newton), flag(r.engine_vs_newton)),
            ]
        })
        .collect();
    let header = ["family", "n", "claim", "newton", "engine", "status"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    // Identical notes are printed once, with every row they apply to.
    let mut notes: Vec<(&str, Vec<String>)> = Vec::new();
    for r in reports {
        for &note in &r.notes {
            match notes.iter_mut().find(|(n, _)| *n == note) {
                Some((_, labels)) => labels.push(r.label()),
                None => notes.push((note, vec![r.label()])),
            }
        }
    }
    for (note, labels) in notes {
        let _ = writeln!(out, "note [{}]: {note}", labels.join(" "));
    }
    out
}

pub fn estimate(f: &Poly, mode: Mode, e: &Estimate<f64>, reason: Option<&str>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polynomial  {} ({} mode)", format_poly(f), mode.as_str());
    match reason {
        None => {
            let _ = writeln!(
                out,
                "lambda_hat  {:.4} +- {:.4} ({} levels used)",
                e.lambda_hat, e.stderr, e.levels_used
            );
        }
        Some(reason) => {
            let _ = writeln!(out, "unreliable  {reason}");
        }
    }
    let _ = writeln!(out, "{:>12}  {:>10}", "t", "hits");
    for (t, hits) in &e.hit_counts {
        let _ = writeln!(out, "{t:>12.4e}  {hits:>10}");
    }
    out
}
