use std::fmt;

use super::expr::parse_expr_at;
use super::{Expr, ParseError, ParseErrorKind, SourceSpan};

/// One step of a resolution script.
#[derive(Debug, Clone, PartialEq)]
pub enum ScriptStep {
    /// Blow up the origin of the current chart along the coordinate
    /// subspace cut out by `center`.
    Blowup { center: Vec<String> },
    /// Continue in the chart where `var` generates the new exceptional divisor.
    Chart { var: String },
    /// Change coordinates: the new `var` is `expr` written in the old ones.
    Subst { var: String, expr: Expr },
    /// Move the origin: the new `var` is `var - a` (the right-hand side must
    /// be `var` plus a constant).
    Translate { var: String, expr: Expr },
    /// The current local analysis stands for `copies` conjugate points.
    Orbit { copies: u32 },
    Stop,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScriptLine {
    pub step: ScriptStep,
    pub span: SourceSpan,
    pub source: String,
}

/// A single path through a resolution tree, one step per line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResolutionScript {
    pub steps: Vec<ScriptLine>,
}

impl ResolutionScript {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

impl fmt::Display for ResolutionScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.steps {
            writeln!(f, "{}", line.source)?;
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the script language:
///
/// ```text
/// # comment
/// blowup x y z
/// chart z
/// subst z := z + y*z^4
/// translate z := z - i
/// orbit 2
/// stop
/// ```
pub fn parse_script(text: &str) -> Result<ResolutionScript, ParseError> {
    let mut steps: Vec<ScriptLine> = Vec::new();
    for (ln0, raw) in text.lines().enumerate() {
        let line_no = ln0 + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_end();
        let indent = trimmed.len() - trimmed.trim_start().len();
        let content = trimmed.trim_start();
        if content.is_empty() {
            continue;
        }
        let col = body[..indent].chars().count() + 1;
        let cmd = content.split_whitespace().next().unwrap();
        let span = SourceSpan::new(line_no, col, cmd.chars().count());
        let rest = &content[cmd.len()..];
        let rest_col = col + cmd.chars().count();
        let words: Vec<&str> = rest.split_whitespace().collect();
        let step = match cmd {
            "blowup" => {
                if words.is_empty() {
                    return Err(ParseError::new(
                        ParseErrorKind::InvalidScript("`blowup` needs a center".into()),
                        span,
                    ));
                }
                for (i, w) in words.iter().enumerate() {
                    if !is_ident(w) || words[..i].contains(w) {
                        return Err(ParseError::new(
                            ParseErrorKind::InvalidScript(format!("bad center variable `{w}`")),
                            span,
                        ));
                    }
                }
                ScriptStep::Blowup {
                    center: words.iter().map(|w| w.to_string()).collect(),
                }
            }
            "chart" => match words.as_slice() {
                [v] if is_ident(v) => ScriptStep::Chart { var: v.to_string() },
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::InvalidScript("`chart` takes one variable".into()),
                        span,
                    ))
                }
            },
            "subst" | "translate" => {
                let (var, expr) = parse_assignment(rest, line_no, rest_col, span)?;
                if cmd == "subst" {
                    ScriptStep::Subst { var, expr }
                } else {
                    ScriptStep::Translate { var, expr }
                }
            }
            "orbit" => match words.as_slice() {
                [n] => match n.parse::<u32>() {
                    Ok(m) if m >= 1 => ScriptStep::Orbit { copies: m },
                    _ => {
                        return Err(ParseError::new(
                            ParseErrorKind::InvalidScript("`orbit` takes a positive integer".into()),
                            span,
                        ))
                    }
                },
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::InvalidScript("`orbit` takes a positive integer".into()),
                        span,
                    ))
                }
            },
            "stop" => {
                if !words.is_empty() {
                    return Err(ParseError::new(
                        ParseErrorKind::InvalidScript("`stop` takes no arguments".into()),
                        span,
                    ));
                }
                ScriptStep::Stop
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::UnknownCommand(other.to_string()),
                    span,
                ))
            }
        };
        steps.push(ScriptLine {
            step,
            span,
            source: content.to_string(),
        });
    }
    validate(&steps)?;
    Ok(ResolutionScript { steps })
}

fn parse_assignment(
    rest: &str,
    line: usize,
    col: usize,
    cmd_span: SourceSpan,
) -> Result<(String, Expr), ParseError> {
    let malformed = |m: &str| {
        ParseError::new(ParseErrorKind::MalformedSubstitution(m.to_string()), cmd_span)
    };
    let Some(pos) = rest.find(":=") else {
        return Err(malformed("expected `variable := expression`"));
    };
    let lhs = rest[..pos].trim();
    if !is_ident(lhs) {
        return Err(malformed("left-hand side must be a single variable"));
    }
    let rhs = &rest[pos + 2..];
    let rhs_col = col + rest[..pos + 2].chars().count();
    let expr = parse_expr_at(rhs, line, rhs_col).map_err(|e| {
        ParseError::new(ParseErrorKind::MalformedSubstitution(e.kind.to_string()), e.span)
    })?;
    Ok((lhs.to_string(), expr))
}

fn validate(steps: &[ScriptLine]) -> Result<(), ParseError> {
    for (i, line) in steps.iter().enumerate() {
        let prev = i.checked_sub(1).map(|j| &steps[j].step);
        let next = steps.get(i + 1);
        match &line.step {
            ScriptStep::Chart { .. } if !matches!(prev, Some(ScriptStep::Blowup { .. })) => {
                return Err(ParseError::new(ParseErrorKind::ChartWithoutBlowup, line.span));
            }
            ScriptStep::Blowup { .. }
                if next.is_some_and(|n| !matches!(n.step, ScriptStep::Chart { .. })) =>
            {
                return Err(ParseError::new(ParseErrorKind::BlowupWithoutChart, line.span));
            }
            ScriptStep::Stop if next.is_some() => {
                return Err(ParseError::new(
                    ParseErrorKind::InvalidScript("steps after `stop`".into()),
                    next.unwrap().span,
                ));
            }
            _ => {}
        }
    }
    Ok(())
}
