//! Blow-up charts with exact bookkeeping of the exceptional exponents `k`
//! (order of the total transform) and Jacobian exponents `h`, plus the
//! resolution driver.
//!
//! A chart's coordinates keep the ambient variable names; the history of
//! coordinate changes is kept as a chain of *segments*. Inside a segment the
//! anchor coordinates are polynomials in the chart coordinates (monomial
//! blow-up maps and translations). An affine substitution starts a new
//! segment, because its inverse is in general only a power series.

mod chart;
mod dot;
mod driver;
mod jacobian;

pub use chart::{classify, Chart, ChartStatus, Divisor, DivisorId};
pub use driver::{resolve, ResolutionTree, Strategy, TreeNode, DEFAULT_MAX_DEPTH};
pub use jacobian::{determinant, verify_jacobian};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::parser::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlowupError {
    #[error("blow-up center needs at least two variables")]
    CenterTooSmall,
    #[error("variable `{0}` is not a coordinate of this chart")]
    UnknownVariable(String),
    #[error("variable `{0}` appears twice in the center")]
    DuplicateCenter(String),
    #[error("chart `{0}` is not open")]
    NotOpen(String),
    #[error("substitution is not invertible at the origin: {0}")]
    NonInvertible(String),
    #[error("substitution changes the exceptional monomial: {0}")]
    FactorizationDestroyed(String),
    #[error("substitution does not give a polynomial strict transform within degree {0}")]
    NotPolynomial(u32),
    #[error("cannot translate exceptional variable `{0}`")]
    TranslateExceptional(String),
    #[error("translation must have the form `{0} + constant`")]
    MalformedTranslation(String),
    #[error("chart variable `{0}` is not in the blow-up center")]
    ChartNotInCenter(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolveError {
    #[error("the zero polynomial has no singularity to resolve")]
    ZeroInput,
    #[error("the polynomial does not vanish at the origin")]
    UnitInput,
    #[error("script step needs more than the maximum depth {0}")]
    ScriptTooDeep(u32),
    #[error("script {span}: {error}")]
    Script {
        span: SourceSpan,
        error: Box<ResolveError>,
    },
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl ResolveError {
    /// True for failures that indicate a bug or a broken invariant rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            ResolveError::Blowup(BlowupError::Inconsistent(_))
            | ResolveError::Blowup(BlowupError::FactorizationDestroyed(_))
            | ResolveError::Blowup(BlowupError::Algebra(AlgebraError::ZeroDivisor { .. })) => true,
            ResolveError::Script { error, .. } => error.is_internal(),
            _ => false,
        }
    }
}
