use std::fmt::Write;

use super::driver::ResolutionTree;
use crate::algebra::Coefficient;
use crate::parser::format_poly;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl<C: Coefficient> ResolutionTree<C> {
    /// Graphviz rendering, one node per chart.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, node) in self.nodes().iter().enumerate() {
            let chart = &node.chart;
            let mut label = chart.path_string();
            for (v, d) in chart.divisors() {
                let _ = write!(label, "\\n{v}: k={} h={}", d.k, d.h);
                if d.copies > 1 {
                    let _ = write!(label, " x{}", d.copies);
                }
            }
            let _ = write!(
                label,
                "\\nstrict: {}\\n{}",
                escape(&format_poly(chart.strict())),
                chart.status()
            );
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
            if let Some(p) = node.parent {
                let _ = writeln!(out, "  n{p} -> n{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}
