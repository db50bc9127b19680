use super::chart::{Chart, ChartStatus};
use super::{BlowupError, ResolveError};
use crate::algebra::{Coefficient, Polynomial};
use crate::parser::{format_coefficient, ResolutionScript, ScriptLine, ScriptStep};

pub const DEFAULT_MAX_DEPTH: u32 = 24;

/// How the driver chooses blow-ups.
#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    /// Blow up every open chart until it classifies or `max_depth` blow-ups
    /// have been spent on its path.
    Auto { max_depth: u32 },
    /// Follow the script along one path; everything off the path (and the
    /// rest of the path once the script ends) is resolved automatically.
    Scripted {
        script: ResolutionScript,
        max_depth: u32,
    },
}

impl Strategy {
    pub fn auto() -> Self {
        Strategy::Auto {
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }

    pub fn max_depth(&self) -> u32 {
        match self {
            Strategy::Auto { max_depth } | Strategy::Scripted { max_depth, .. } => *max_depth,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TreeNode<C: Coefficient> {
    pub chart: Chart<C>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl<C: Coefficient> TreeNode<C> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Charts in depth-first order; node 0 is the root.
#[derive(Debug, Clone)]
pub struct ResolutionTree<C: Coefficient> {
    root_polynomial: Polynomial<C>,
    nodes: Vec<TreeNode<C>>,
    strategy_log: Vec<String>,
    failed: bool,
}

impl<C: Coefficient> ResolutionTree<C> {
    pub fn root_polynomial(&self) -> &Polynomial<C> {
        &self.root_polynomial
    }

    pub fn nodes(&self) -> &[TreeNode<C>] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &TreeNode<C> {
        &self.nodes[idx]
    }

    pub fn root(&self) -> &Chart<C> {
        &self.nodes[0].chart
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Chart<C>> {
        self.nodes.iter().filter(|n| n.is_leaf()).map(|n| &n.chart)
    }

    pub fn strategy_log(&self) -> &[String] {
        &self.strategy_log
    }

    /// Some leaf ran out of depth.
    pub fn failed(&self) -> bool {
        self.failed
    }

    /// Every leaf has a unit strict transform.
    pub fn is_certified(&self) -> bool {
        self.leaves().all(|c| c.status() == ChartStatus::UnitStrict)
    }

    pub fn max_chart_depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.chart.depth()).max().unwrap_or(0)
    }

    /// Leaf with the given path string.
    pub fn find(&self, path: &str) -> Option<&Chart<C>> {
        self.nodes
            .iter()
            .map(|n| &n.chart)
            .find(|c| c.path_string() == path)
    }
}

/// Build a resolution tree of `f` at the origin.
pub fn resolve<C: Coefficient>(
    f: &Polynomial<C>,
    strategy: &Strategy,
) -> Result<ResolutionTree<C>, ResolveError> {
    let root = Chart::root(f)?;
    let mut builder = Builder {
        nodes: vec![TreeNode {
            chart: root,
            parent: None,
            children: Vec::new(),
        }],
        log: Vec::new(),
        failed: false,
        max_depth: strategy.max_depth(),
    };
    match strategy {
        Strategy::Auto { .. } => builder.auto(0)?,
        Strategy::Scripted { script, .. } => builder.scripted(script)?,
    }
    Ok(ResolutionTree {
        root_polynomial: f.clone(),
        nodes: builder.nodes,
        strategy_log: builder.log,
        failed: builder.failed,
    })
}

struct Builder<C: Coefficient> {
    nodes: Vec<TreeNode<C>>,
    log: Vec<String>,
    failed: bool,
    max_depth: u32,
}

/// Variables occurring in the strict transform; with fewer than two, the
/// non-exceptional variables, then all of them.
fn auto_center<C: Coefficient>(chart: &Chart<C>) -> Vec<String> {
    let vars = chart.variables();
    let in_support: Vec<String> = chart
        .strict()
        .variables_in_support()
        .into_iter()
        .map(|i| vars.name(i).to_string())
        .collect();
    if in_support.len() >= 2 {
        return in_support;
    }
    let free: Vec<String> = vars
        .names()
        .iter()
        .filter(|v| !chart.is_exceptional(v))
        .cloned()
        .collect();
    if free.len() >= 2 {
        return free;
    }
    vars.names().to_vec()
}

impl<C: Coefficient> Builder<C> {
    fn push(&mut self, parent: usize, chart: Chart<C>) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(TreeNode {
            chart,
            parent: Some(parent),
            children: Vec::new(),
        });
        self.nodes[parent].children.push(idx);
        idx
    }

    fn blowup(&mut self, at: usize, center: &[String]) -> Result<Vec<usize>, BlowupError> {
        let refs: Vec<&str> = center.iter().map(String::as_str).collect();
        let children = self.nodes[at].chart.blowup_origin(&refs)?;
        self.log.push(format!(
            "{}: blow up {{{}}}",
            self.nodes[at].chart.path_string(),
            center.join(",")
        ));
        Ok(children.into_iter().map(|c| self.push(at, c)).collect())
    }

    fn auto(&mut self, at: usize) -> Result<(), ResolveError> {
        let status = self.nodes[at].chart.classify();
        if status != ChartStatus::Open {
            return Ok(());
        }
        if self.nodes[at].chart.depth() >= self.max_depth {
            self.nodes[at].chart.set_status(ChartStatus::DepthLimit);
            self.log.push(format!(
                "{}: depth limit {} reached",
                self.nodes[at].chart.path_string(),
                self.max_depth
            ));
            self.failed = true;
            return Ok(());
        }
        let center = auto_center(&self.nodes[at].chart);
        for child in self.blowup(at, &center)? {
            self.auto(child)?;
        }
        Ok(())
    }

    fn scripted(&mut self, script: &ResolutionScript) -> Result<(), ResolveError> {
        let mut cursor = 0usize;
        let mut pending: Option<(Vec<usize>, &ScriptLine)> = None;
        for line in &script.steps {
            let wrap = |error: ResolveError| ResolveError::Script {
                span: line.span,
                error: Box::new(error),
            };
            match &line.step {
                ScriptStep::Blowup { center } => {
                    if self.nodes[cursor].chart.depth() >= self.max_depth {
                        return Err(wrap(ResolveError::ScriptTooDeep(self.max_depth)));
                    }
                    let children = self.blowup(cursor, center).map_err(|e| wrap(e.into()))?;
                    pending = Some((children, line));
                }
                ScriptStep::Chart { var } => {
                    let Some((children, _)) = pending.take() else {
                        return Err(wrap(BlowupError::Inconsistent("chart without blow-up".into()).into()));
                    };
                    let chosen = children.iter().copied().find(|&c| {
                        self.nodes[c].chart.path().last().is_some_and(|l| {
                            l == &format!("U_{var}") || l.starts_with(&format!("U_{var}{{"))
                        })
                    });
                    let Some(chosen) = chosen else {
                        return Err(wrap(BlowupError::ChartNotInCenter(var.clone()).into()));
                    };
                    for c in children {
                        if c != chosen {
                            self.auto(c)?;
                        }
                    }
                    cursor = chosen;
                }
                ScriptStep::Subst { var, expr } => {
                    let chart = &self.nodes[cursor].chart;
                    let image = expr
                        .to_polynomial::<C>(chart.strict().ring(), chart.variables())
                        .map_err(|e| wrap(e.into()))?;
                    let (next, lead) = chart
                        .apply_affine(var, &image, None)
                        .map_err(|e| wrap(e.into()))?;
                    self.log.push(format!(
                        "{}: subst {var} := {image}, Jacobian constant {}",
                        chart.path_string(),
                        format_coefficient(&lead)
                    ));
                    cursor = self.push(cursor, next);
                }
                ScriptStep::Translate { var, expr } => {
                    let chart = &self.nodes[cursor].chart;
                    let value = translation_value(chart, var, expr).map_err(wrap)?;
                    let origin = chart
                        .translate(var, &C::zero_in(chart.strict().ring()))
                        .map_err(|e| wrap(e.into()))?;
                    let moved = chart.translate(var, &value).map_err(|e| wrap(e.into()))?;
                    self.log.push(format!(
                        "{}: translate {var} by {}",
                        chart.path_string(),
                        format_coefficient(&value)
                    ));
                    let origin = self.push(cursor, origin);
                    self.auto(origin)?;
                    cursor = self.push(cursor, moved);
                }
                ScriptStep::Orbit { copies } => {
                    let chart = &mut self.nodes[cursor].chart;
                    chart.multiply_orbit(*copies);
                    self.log.push(format!("{}: orbit of {copies} conjugate points", chart.path_string()));
                }
                ScriptStep::Stop => {
                    if let Some((children, _)) = pending.take() {
                        for c in children {
                            self.auto(c)?;
                        }
                        return Ok(());
                    }
                    let chart = &mut self.nodes[cursor].chart;
                    if chart.classify() == ChartStatus::Open {
                        chart.set_status(ChartStatus::DepthLimit);
                        self.log.push(format!("{}: stopped while still singular", chart.path_string()));
                        self.failed = true;
                    }
                    return Ok(());
                }
            }
        }
        match pending {
            Some((children, _)) => {
                for c in children {
                    self.auto(c)?;
                }
                Ok(())
            }
            None => self.auto(cursor),
        }
    }
}

/// `var := var + c` moves the origin to `var = -c`.
fn translation_value<C: Coefficient>(
    chart: &Chart<C>,
    var: &str,
    expr: &crate::parser::Expr,
) -> Result<C, ResolveError> {
    let ring = chart.strict().ring();
    let vars = chart.variables();
    let image = expr.to_polynomial::<C>(ring, vars)?;
    let x = Polynomial::variable(vars, ring, var).map_err(BlowupError::from)?;
    let shift = &image - &x;
    if !shift.is_constant() {
        return Err(BlowupError::MalformedTranslation(var.to_string()).into());
    }
    Ok(shift.constant_term().neg_ref())
}
