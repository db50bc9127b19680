use std::fmt;

use thiserror::Error;

/// Location of a diagnostic: 1-based line and column, length in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        Self {
            line,
            column,
            length: length.max(1),
        }
    }

    /// Smallest single-line span covering both (falls back to `self` across lines).
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        if self.line != other.line {
            return self;
        }
        let end = (other.column + other.length).max(self.column + self.length);
        SourceSpan::new(self.line, self.column, end - self.column)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownSymbol(String),
    NegativeExponent,
    UnknownCommand(String),
    ChartWithoutBlowup,
    BlowupWithoutChart,
    MalformedSubstitution(String),
    InvalidScript(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax(m) => write!(f, "syntax error: {m}"),
            Self::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            Self::NegativeExponent => f.write_str("exponents must be non-negative integers"),
            Self::UnknownCommand(c) => write!(f, "unknown command `{c}`"),
            Self::ChartWithoutBlowup => f.write_str("`chart` must immediately follow `blowup`"),
            Self::BlowupWithoutChart => {
                f.write_str("`blowup` must be followed by `chart` unless it is the last step")
            }
            Self::MalformedSubstitution(m) => write!(f, "malformed substitution: {m}"),
            Self::InvalidScript(m) => write!(f, "invalid script: {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: SourceSpan) -> Self {
        Self { kind, span }
    }

    pub(crate) fn syntax(msg: impl Into<String>, span: SourceSpan) -> Self {
        Self::new(ParseErrorKind::Syntax(msg.into()), span)
    }

    /// The offending source line with a caret marker under the span.
    pub fn annotate(&self, source: &str) -> String {
        let line = source.lines().nth(self.span.line - 1).unwrap_or("");
        format!(
            "{self}\n  {line}\n  {}{}",
            " ".repeat(self.span.column - 1),
            "^".repeat(self.span.length)
        )
    }
}
