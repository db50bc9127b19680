use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{BlowupError, ResolveError};
use crate::algebra::{Coefficient, ExponentVector, Polynomial, Variables};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartStatus {
    /// Singular at the origin; needs more blow-ups.
    Open,
    /// The strict transform is a unit at the origin.
    UnitStrict,
    /// The strict transform is smooth at the origin.
    SmoothStrict,
    /// Still singular when the depth budget ran out.
    DepthLimit,
}

impl ChartStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartStatus::Open => "Open",
            ChartStatus::UnitStrict => "UnitStrict",
            ChartStatus::SmoothStrict => "SmoothStrict",
            ChartStatus::DepthLimit => "DepthLimit",
        }
    }
}

impl fmt::Display for ChartStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Identity of a divisor, stable across the charts in which it is visible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorId {
    /// A coordinate hyperplane dividing the input polynomial itself.
    Coordinate(String),
    /// The exceptional divisor of the blow-up performed at the chart with
    /// this path.
    Exceptional(String),
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorId::Coordinate(v) => write!(f, "{{{v}=0}}"),
            DivisorId::Exceptional(p) => write!(f, "E[{p}]"),
        }
    }
}

/// A divisor `{v = 0}` visible in a chart, with the orders `k` of the total
/// transform and `h` of the Jacobian determinant along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub id: DivisorId,
    pub k: u32,
    pub h: u32,
    /// Number of conjugate copies declared by `orbit` steps.
    pub copies: u32,
}

/// One coordinate patch of a partial resolution.
#[derive(Debug, Clone)]
pub struct Chart<C: Coefficient> {
    path: Vec<String>,
    vars: Variables,
    divisors: BTreeMap<usize, Divisor>,
    strict: Polynomial<C>,
    status: ChartStatus,
    transversal: bool,
    depth: u32,
    orbit: u32,
    /// Anchor coordinates of the current segment, as polynomials in the
    /// chart coordinates.
    map: Vec<Polynomial<C>>,
    segment: Arc<Segment<C>>,
}

#[derive(Debug)]
pub(crate) struct Segment<C: Coefficient> {
    /// Total transform at the anchor, in anchor coordinates.
    pub anchor_total: Polynomial<C>,
    pub anchor_h: BTreeMap<usize, u32>,
    pub link: Option<AffineLink<C>>,
}

/// How an anchor was reached from the previous segment.
#[derive(Debug)]
pub(crate) struct AffineLink<C: Coefficient> {
    /// New coordinates as polynomials in the parent chart's coordinates.
    pub coords: Vec<Polynomial<C>>,
    pub parent_map: Vec<Polynomial<C>>,
    pub parent_h: BTreeMap<usize, u32>,
    pub parent_segment: Arc<Segment<C>>,
}

impl<C: Coefficient> Chart<C> {
    /// The chart at the origin of the input. Coordinate hyperplanes dividing
    /// `f` are split off as divisors with `h = 0`.
    pub fn root(f: &Polynomial<C>) -> Result<Self, ResolveError> {
        if f.is_zero() {
            return Err(ResolveError::ZeroInput);
        }
        if f.is_unit_at_origin() {
            return Err(ResolveError::UnitInput);
        }
        let vars = f.variables().clone();
        let mut strict = f.clone();
        let mut divisors = BTreeMap::new();
        for i in 0..vars.len() {
            let (e, q) = strict.monomial_content_at(i).map_err(BlowupError::from)?;
            strict = q;
            if e > 0 {
                divisors.insert(
                    i,
                    Divisor {
                        id: DivisorId::Coordinate(vars.name(i).to_string()),
                        k: e,
                        h: 0,
                        copies: 1,
                    },
                );
            }
        }
        let map = identity_map(f);
        Ok(Self {
            path: vec!["root".into()],
            divisors,
            strict,
            status: ChartStatus::Open,
            transversal: false,
            depth: 0,
            orbit: 1,
            segment: Arc::new(Segment {
                anchor_total: f.clone(),
                anchor_h: BTreeMap::new(),
                link: None,
            }),
            map,
            vars,
        })
    }

    pub fn path(&self) -> &[String] {
        &self.path
    }

    pub fn path_string(&self) -> String {
        self.path.join("/")
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn strict(&self) -> &Polynomial<C> {
        &self.strict
    }

    pub fn status(&self) -> ChartStatus {
        self.status
    }

    pub(crate) fn set_status(&mut self, status: ChartStatus) {
        self.status = status;
    }

    /// For smooth strict transforms: whether the gradient at the origin has
    /// a component along a non-exceptional coordinate.
    pub fn transversal(&self) -> bool {
        self.transversal
    }

    /// Number of blow-ups between the root and this chart.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn orbit(&self) -> u32 {
        self.orbit
    }

    pub(crate) fn multiply_orbit(&mut self, m: u32) {
        self.orbit *= m;
    }

    /// Divisors by variable name, in variable order.
    pub fn divisors(&self) -> impl Iterator<Item = (&str, &Divisor)> {
        self.divisors.iter().map(|(&i, d)| (self.vars.name(i), d))
    }

    pub fn divisor(&self, var: &str) -> Option<&Divisor> {
        self.vars.index_of(var).and_then(|i| self.divisors.get(&i))
    }

    pub fn exceptional_vars(&self) -> Vec<&str> {
        self.divisors.keys().map(|&i| self.vars.name(i)).collect()
    }

    pub fn is_exceptional(&self, var: &str) -> bool {
        self.divisor(var).is_some()
    }

    /// `k` exponent of `var` (0 when `var` is not exceptional).
    pub fn k(&self, var: &str) -> u32 {
        self.divisor(var).map_or(0, |d| d.k)
    }

    /// `h` exponent of `var` (0 when `var` is not exceptional).
    pub fn h(&self, var: &str) -> u32 {
        self.divisor(var).map_or(0, |d| d.h)
    }

    pub(crate) fn h_map(&self) -> BTreeMap<usize, u32> {
        self.divisors
            .iter()
            .filter(|(_, d)| d.h > 0)
            .map(|(&i, d)| (i, d.h))
            .collect()
    }

    pub(crate) fn segment(&self) -> &Arc<Segment<C>> {
        &self.segment
    }

    pub(crate) fn segment_map(&self) -> &[Polynomial<C>] {
        &self.map
    }

    pub fn exceptional_monomial(&self) -> ExponentVector {
        let mut e = ExponentVector::zeros(self.vars.len());
        for (&i, d) in &self.divisors {
            e.set(i, d.k);
        }
        e
    }

    /// `prod e^k_e * strict`.
    pub fn total_transform(&self) -> Polynomial<C> {
        self.strict.shift(&self.exceptional_monomial())
    }

    /// The pull-back of the current segment's anchor total transform must
    /// equal this chart's total transform exactly.
    pub fn check_total_transform(&self) -> Result<(), BlowupError> {
        let pulled = self.segment.anchor_total.compose(&self.map)?;
        if pulled != self.total_transform() {
            return Err(BlowupError::Inconsistent(format!(
                "total transform identity fails at {}",
                self.path_string()
            )));
        }
        for &i in self.divisors.keys() {
            if self.strict.content_at(i).unwrap_or(0) != 0 {
                return Err(BlowupError::Inconsistent(format!(
                    "strict transform at {} is divisible by {}",
                    self.path_string(),
                    self.vars.name(i)
                )));
            }
        }
        Ok(())
    }

    fn var_index(&self, name: &str) -> Result<usize, BlowupError> {
        self.vars
            .index_of(name)
            .ok_or_else(|| BlowupError::UnknownVariable(name.to_string()))
    }

    /// Blow up the coordinate subspace `{v = 0 : v in center}` through the
    /// origin; one child per center variable, in variable order.
    ///
    /// In the child for `v`, every other center variable `w` becomes `w*v`.
    /// The new divisor `{v = 0}` gets `k = sum of center k + order of the
    /// strict transform along the center` and `h = sum of center h + s - 1`.
    pub fn blowup_origin(&self, center: &[&str]) -> Result<Vec<Chart<C>>, BlowupError> {
        if self.status != ChartStatus::Open {
            return Err(BlowupError::NotOpen(self.path_string()));
        }
        let mut idx = Vec::with_capacity(center.len());
        for name in center {
            let i = self.var_index(name)?;
            if idx.contains(&i) {
                return Err(BlowupError::DuplicateCenter(name.to_string()));
            }
            idx.push(i);
        }
        if idx.len() < 2 {
            return Err(BlowupError::CenterTooSmall);
        }
        idx.sort_unstable();
        let s = idx.len() as u32;
        let ring = self.strict.ring().clone();
        let full = idx.len() == self.vars.len();
        let center_label = idx.iter().map(|&i| self.vars.name(i)).collect::<Vec<_>>().join(",");
        let k_sum: u32 = idx.iter().map(|i| self.divisors.get(i).map_or(0, |d| d.k)).sum();
        let h_sum: u32 = idx.iter().map(|i| self.divisors.get(i).map_or(0, |d| d.h)).sum();
        let divisor_id = DivisorId::Exceptional(self.path_string());

        let mut children = Vec::with_capacity(idx.len());
        for &v in &idx {
            let images: Vec<Polynomial<C>> = (0..self.vars.len())
                .map(|w| {
                    let xw = Polynomial::var_at(&self.vars, &ring, w);
                    if w != v && idx.contains(&w) {
                        &xw * &Polynomial::var_at(&self.vars, &ring, v)
                    } else {
                        xw
                    }
                })
                .collect();
            let pulled = self.strict.compose(&images)?;
            let (content, strict) = pulled.monomial_content_at(v)?;
            let mut divisors = self.divisors.clone();
            divisors.insert(
                v,
                Divisor {
                    id: divisor_id.clone(),
                    k: k_sum + content,
                    h: h_sum + (s - 1),
                    copies: self.orbit,
                },
            );
            let map = self
                .map
                .iter()
                .map(|m| m.compose(&images))
                .collect::<Result<Vec<_>, _>>()?;
            let mut path = self.path.clone();
            let name = self.vars.name(v);
            path.push(if full {
                format!("U_{name}")
            } else {
                format!("U_{name}{{{center_label}}}")
            });
            let child = Chart {
                path,
                vars: self.vars.clone(),
                divisors,
                strict,
                status: ChartStatus::Open,
                transversal: false,
                depth: self.depth + 1,
                orbit: self.orbit,
                map,
                segment: self.segment.clone(),
            };
            child.check_total_transform()?;
            children.push(child);
        }
        Ok(children)
    }

    /// Change coordinates so that the new `var` equals `image` written in the
    /// current coordinates. The strict transform is rewritten exactly; `k`
    /// and `h` must come out unchanged.
    ///
    /// Returns the new chart and the constant term of the Jacobian
    /// determinant of the coordinate change.
    pub fn apply_affine(
        &self,
        var: &str,
        image: &Polynomial<C>,
        degree_bound: Option<u32>,
    ) -> Result<(Chart<C>, C), BlowupError> {
        let v = self.var_index(var)?;
        if image.variables() != &self.vars {
            return Err(BlowupError::Algebra(crate::algebra::AlgebraError::VariableMismatch {
                left: self.vars.names().join(", "),
                right: image.variables().names().join(", "),
            }));
        }
        let ring = self.strict.ring().clone();
        if !image.constant_term().vanishes() {
            return Err(BlowupError::NonInvertible(
                "the image has a constant term (use a translation)".into(),
            ));
        }
        let dv = image.derivative(v);
        let lead = dv.constant_term();
        if lead.vanishes() {
            return Err(BlowupError::NonInvertible(format!(
                "d({var}')/d{var} vanishes at the origin"
            )));
        }
        let lead_inv = lead.inverse()?;

        let total = self.total_transform();
        // When the inverse is polynomial its degree is at most that of the
        // image, which bounds the degree of the rewritten total transform.
        let bound = degree_bound.unwrap_or_else(|| {
            total.total_degree().unwrap_or(0) * image.total_degree().unwrap_or(1).max(1)
        });
        let xv = Polynomial::var_at(&self.vars, &ring, v);
        let ident: Vec<Polynomial<C>> = (0..self.vars.len())
            .map(|i| Polynomial::var_at(&self.vars, &ring, i))
            .collect();

        // Old var as a truncated power series in the new coordinates:
        // iterate q <- (v - (image - lead*v)(.., q, ..)) / lead.
        let rest = image - &xv.scale(&lead);
        let mut inverse = xv.clone();
        for _ in 0..=bound {
            let mut images = ident.clone();
            images[v] = inverse.clone();
            let next = (&xv - &rest.compose(&images)?).scale(&lead_inv).truncate(bound);
            if next == inverse {
                break;
            }
            inverse = next;
        }
        let mut back = ident.clone();
        back[v] = inverse;
        let new_total = total.compose(&back)?.truncate(bound);

        let mut forward = ident;
        forward[v] = image.clone();
        if new_total.compose(&forward)? != total {
            return Err(BlowupError::NotPolynomial(bound));
        }

        let mut strict = new_total;
        for i in 0..self.vars.len() {
            let (e, q) = strict.monomial_content_at(i)?;
            let expected = self.divisors.get(&i).map_or(0, |d| d.k);
            if e != expected {
                return Err(BlowupError::FactorizationDestroyed(format!(
                    "{} has order {e}, expected {expected}",
                    self.vars.name(i)
                )));
            }
            strict = q;
        }

        let mut path = self.path.clone();
        path.push(format!("subst {var}"));
        let segment = Arc::new(Segment {
            anchor_total: strict.shift(&self.exceptional_monomial()),
            anchor_h: self.h_map(),
            link: Some(AffineLink {
                coords: forward,
                parent_map: self.map.clone(),
                parent_h: self.h_map(),
                parent_segment: self.segment.clone(),
            }),
        });
        let chart = Chart {
            path,
            vars: self.vars.clone(),
            divisors: self.divisors.clone(),
            map: identity_map(&strict),
            strict,
            status: ChartStatus::Open,
            transversal: false,
            depth: self.depth,
            orbit: self.orbit,
            segment,
        };
        chart.check_total_transform()?;
        Ok((chart, lead))
    }

    /// Move the origin to the point where `var = value`: the new strict
    /// transform is `strict(.., var + value, ..)`.
    pub fn translate(&self, var: &str, value: &C) -> Result<Chart<C>, BlowupError> {
        let v = self.var_index(var)?;
        if self.divisors.contains_key(&v) {
            return Err(BlowupError::TranslateExceptional(var.to_string()));
        }
        let ring = self.strict.ring().clone();
        let mut images: Vec<Polynomial<C>> = (0..self.vars.len())
            .map(|i| Polynomial::var_at(&self.vars, &ring, i))
            .collect();
        images[v] = &images[v] + &Polynomial::constant(&self.vars, &ring, value.clone());
        let strict = self.strict.compose(&images)?;
        let map = self
            .map
            .iter()
            .map(|m| m.compose(&images))
            .collect::<Result<Vec<_>, _>>()?;
        let mut path = self.path.clone();
        path.push(if value.vanishes() {
            "at origin".to_string()
        } else {
            format!("at {var}={}", crate::parser::format_coefficient(value))
        });
        let chart = Chart {
            path,
            vars: self.vars.clone(),
            divisors: self.divisors.clone(),
            strict,
            status: ChartStatus::Open,
            transversal: false,
            depth: self.depth,
            orbit: self.orbit,
            map,
            segment: self.segment.clone(),
        };
        chart.check_total_transform()?;
        Ok(chart)
    }

    /// Classify and record the status (see [`classify`]).
    pub fn classify(&mut self) -> ChartStatus {
        let (status, transversal) = classify_with_transversality(self);
        self.status = status;
        self.transversal = transversal;
        status
    }
}

fn identity_map<C: Coefficient>(f: &Polynomial<C>) -> Vec<Polynomial<C>> {
    (0..f.variables().len())
        .map(|i| Polynomial::var_at(f.variables(), f.ring(), i))
        .collect()
}

/// `UnitStrict` if the strict transform has a nonzero constant term,
/// `SmoothStrict` if it vanishes at the origin with nonzero gradient there,
/// `Open` otherwise.
pub fn classify<C: Coefficient>(chart: &Chart<C>) -> ChartStatus {
    classify_with_transversality(chart).0
}

fn classify_with_transversality<C: Coefficient>(chart: &Chart<C>) -> (ChartStatus, bool) {
    let strict = &chart.strict;
    if strict.is_unit_at_origin() {
        return (ChartStatus::UnitStrict, false);
    }
    let nonzero: Vec<usize> = (0..chart.vars.len())
        .filter(|&i| !strict.derivative(i).constant_term().vanishes())
        .collect();
    if nonzero.is_empty() {
        return (ChartStatus::Open, false);
    }
    let transversal = nonzero.iter().any(|i| !chart.divisors.contains_key(i));
    (ChartStatus::SmoothStrict, transversal)
}
