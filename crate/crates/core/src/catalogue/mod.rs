//! du Val (ADE) normal forms, the published λ claims for them, the scripted
//! resolutions that follow the hand computations, and an audit comparing
//! claim, engine and Newton oracle.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{NumberField, Rational, Variables};
use crate::blowup::{resolve, ResolveError, ResolutionTree, Strategy, DEFAULT_MAX_DEPTH};
use crate::newton::{lambda_newton, NewtonError};
use crate::parser::{parse_poly, parse_script, ResolutionScript};
use crate::zeta::{lambda_uncapped, ZetaError};
use crate::{FieldElement, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::D, Family::E6, Family::E7, Family::E8];

    /// Admissible `n`; the E types have a fixed parameter.
    pub fn range(self) -> std::ops::RangeInclusive<u32> {
        match self {
            Family::A => 1..=u32::MAX,
            Family::D => 4..=u32::MAX,
            Family::E6 => 6..=6,
            Family::E7 => 7..=7,
            Family::E8 => 8..=8,
        }
    }

    pub fn fixed_n(self) -> Option<u32> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        })
    }
}

impl FromStr for Family {
    type Err = CatalogueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "D" => Ok(Family::D),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            "E8" => Ok(Family::E8),
            _ => Err(CatalogueError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogueError {
    #[error("unknown family `{0}` (expected A, D, E6, E7 or E8)")]
    UnknownFamily(String),
    #[error("{family}_{n} is out of range")]
    OutOfRange { family: Family, n: u32 },
    #[error("family {0} needs a parameter n")]
    MissingParameter(Family),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

/// A value claimed in the source computation, with its formula as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub value: Rational,
    pub formula: &'static str,
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub generator: Poly,
    pub claims: Vec<Claim>,
    pub script: ResolutionScript,
}

fn q(num: u32, den: u32) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Resolve `n` for a family, filling in the fixed parameter of E types.
pub fn parameter(family: Family, n: Option<u32>) -> Result<u32, CatalogueError> {
    let n = match (family.fixed_n(), n) {
        (Some(fixed), None) => fixed,
        (_, Some(n)) => n,
        (None, None) => return Err(CatalogueError::MissingParameter(family)),
    };
    if !family.range().contains(&n) {
        return Err(CatalogueError::OutOfRange { family, n });
    }
    Ok(n)
}

fn generator_text(family: Family, n: u32) -> String {
    match family {
        Family::A => format!("x^2 + y^2 + z^{}", n + 1),
        Family::D => format!("x^2 + y^2*z + z^{}", n - 1),
        Family::E6 => "x^2 + y^3 + z^4".into(),
        Family::E7 => "x^2 + y^3 + y*z^3".into(),
        Family::E8 => "x^2 + y^3 + z^5".into(),
    }
}

/// Normal form over `field` in the variables x, y, z.
pub fn generator_in(field: &Arc<NumberField>, family: Family, n: u32) -> Result<Poly, CatalogueError> {
    parameter(family, Some(n))?;
    Ok(parse_poly::<FieldElement>(&generator_text(family, n), field, &Variables::xyz())
        .expect("normal forms parse"))
}

/// Normal form over the Gaussian rationals.
pub fn generator(family: Family, n: u32) -> Result<Poly, CatalogueError> {
    generator_in(&NumberField::gaussian(), family, n)
}

/// The claimed λ values, verbatim; two for `D_n` with `n >= 6`, where the
/// source leaves the branch open.
pub fn claims(family: Family, n: u32) -> Result<Vec<Claim>, CatalogueError> {
    let n = parameter(family, Some(n))?;
    Ok(match family {
        // The parity labels of the source are stored as written: the "even
        // case" formula applies when n + 1 is even.
        Family::A if n % 2 == 1 => vec![Claim {
            value: q(n + 2, n + 1),
            formula: "(2k+1)/(n+1) = (n+2)/(n+1)",
        }],
        Family::A => vec![Claim {
            value: q(n + 1, n),
            formula: "(2k+1)/n = (n+1)/n",
        }],
        Family::D if n == 4 => vec![Claim {
            value: q(4, 3),
            formula: "(2+1+1)/(2+1) = 4/3",
        }],
        Family::D if n == 5 => vec![Claim {
            value: q(6, 5),
            formula: "min{5/4, 6/5} = 6/5",
        }],
        Family::D => vec![
            Claim {
                value: q(n + 1, n),
                formula: "(n+1)/n",
            },
            Claim {
                value: q(n - 1, n - 2),
                formula: "(n-1)/(n-2)",
            },
        ],
        Family::E6 => vec![Claim {
            value: q(12, 13),
            formula: "12/13",
        }],
        Family::E7 => vec![Claim {
            value: q(5, 6),
            formula: "5/6",
        }],
        Family::E8 => vec![Claim {
            value: q(9, 8),
            formula: "(1+2+6)/(2+6) = 9/8",
        }],
    })
}

/// Known inconsistencies in the claims, reported next to them.
pub fn claim_notes(family: Family, n: u32) -> Result<Vec<&'static str>, CatalogueError> {
    let n = parameter(family, Some(n))?;
    Ok(match family {
        Family::A => vec!["parity labels of the two A_n cases do not match their own formulas"],
        Family::D if n == 5 => vec!["the sub-claim that x^2 + y^2 + z^4 (A_3) has lambda 4/3 contradicts the A_n formula, which gives 5/4"],
        Family::D if n >= 6 => vec!["two values are given without saying which applies; neither is asserted"],
        _ => Vec::new(),
    })
}

fn repeat_z(times: u32) -> String {
    "blowup x y z\nchart z\n".repeat(times as usize)
}

fn script_text(family: Family, n: u32) -> String {
    match family {
        // Each z-chart blow-up lowers the z exponent by two.
        Family::A => repeat_z(n.div_ceil(2)),
        // Chart y meets the divisor in x^2 + y*z*(1 + z^2), with A_1 points
        // at z = 0 and z = +-i; the origin is resolved automatically.
        Family::D if n == 4 => "blowup x y z\nchart y\ntranslate z := z - i\norbit 2\n".into(),
        Family::D if n == 5 => "blowup x y z\nchart y\nsubst z := z + y*z^4\n".into(),
        // U_z turns D_n into D_{n-2}.
        Family::D => repeat_z((n - 4) / 2),
        Family::E6 => "blowup x y z\nchart y\n".into(),
        Family::E7 | Family::E8 => "blowup x y z\nchart z\n".into(),
    }
}

/// The script following the hand computation for this family.
pub fn scripted_resolution(family: Family, n: u32) -> Result<ResolutionScript, CatalogueError> {
    let n = parameter(family, Some(n))?;
    Ok(parse_script(&script_text(family, n)).expect("bundled scripts parse"))
}

pub fn family_spec(family: Family, n: u32) -> Result<FamilySpec, CatalogueError> {
    Ok(FamilySpec {
        family,
        n,
        generator: generator(family, n)?,
        claims: claims(family, n)?,
        script: scripted_resolution(family, n)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Match,
    Mismatch,
}

impl Agreement {
    fn of(equal: bool) -> Self {
        if equal {
            Agreement::Match
        } else {
            Agreement::Mismatch
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Match => "match",
            Agreement::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub family: Family,
    pub n: u32,
    pub claims: Vec<Claim>,
    pub notes: Vec<&'static str>,
    pub newton_value: Rational,
    pub engine_value: Rational,
    pub engine_certified: bool,
    /// The scripted tree hit the depth limit somewhere.
    pub failed: bool,
    /// Any claim equals the oracle.
    pub claim_vs_newton: Agreement,
    pub engine_vs_newton: Agreement,
}

impl VerifyReport {
    pub fn label(&self) -> String {
        match self.family {
            Family::A | Family::D => format!("{}_{}", self.family, self.n),
            _ => self.family.to_string(),
        }
    }
}

/// Scripted resolution of the family member; exposed for inspection.
pub fn scripted_tree(family: Family, n: u32) -> Result<ResolutionTree<FieldElement>, CatalogueError> {
    let spec = family_spec(family, n)?;
    let strategy = Strategy::Scripted {
        script: spec.script,
        max_depth: DEFAULT_MAX_DEPTH,
    };
    Ok(resolve(&spec.generator, &strategy)?)
}

/// Generator, scripted resolution, pole report and Newton oracle, compared
/// by exact equality.
pub fn verify(family: Family, n: u32) -> Result<VerifyReport, CatalogueError> {
    let n = parameter(family, Some(n))?;
    let spec = family_spec(family, n)?;
    let tree = scripted_tree(family, n)?;
    let report = lambda_uncapped(&tree)?;
    let newton = lambda_newton(&spec.generator)?;
    Ok(VerifyReport {
        claim_vs_newton: Agreement::of(spec.claims.iter().any(|c| c.value == newton.lambda_np)),
        engine_vs_newton: Agreement::of(report.lambda_uncapped == newton.lambda_np),
        family,
        n,
        claims: spec.claims,
        notes: claim_notes(family, n)?,
        newton_value: newton.lambda_np,
        engine_value: report.lambda_uncapped,
        engine_certified: report.certified,
        failed: report.failed,
    })
}

/// `(family, n)` pairs of the full audit: A_1..A_20, D_4..D_12, E6, E7, E8.
pub fn audit_members() -> Vec<(Family, u32)> {
    (1..=20)
        .map(|n| (Family::A, n))
        .chain((4..=12).map(|n| (Family::D, n)))
        .chain([(Family::E6, 6), (Family::E7, 7), (Family::E8, 8)])
        .collect()
}

pub fn verify_all() -> Result<Vec<VerifyReport>, CatalogueError> {
    audit_members().into_iter().map(|(f, n)| verify(f, n)).collect()
}
