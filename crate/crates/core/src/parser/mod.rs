//! Text grammar for polynomials, the canonical formatter, and the
//! line-oriented resolution script language.

mod error;
mod expr;
mod format;
mod lexer;
mod script;

pub use error::{ParseError, ParseErrorKind, SourceSpan};
pub use expr::{parse_expr, Expr};
pub use format::{format_coefficient, format_poly};
pub use script::{parse_script, ResolutionScript, ScriptLine, ScriptStep};

use crate::algebra::{Coefficient, Polynomial, Variables};

/// Parse `text` as a polynomial over `ring` in the given variables.
///
/// Multiplication must be written with `*`; `^` takes a non-negative integer
/// exponent and binds tighter than unary minus.
pub fn parse_poly<C: Coefficient>(
    text: &str,
    ring: &C::Ring,
    vars: &Variables,
) -> Result<Polynomial<C>, ParseError> {
    parse_expr(text)?.to_polynomial(ring, vars)
}

#[cfg(test)]
mod tests;
