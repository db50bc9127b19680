use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::algebra::{Coefficient, Polynomial, Rational, Variables};

/// Field-independent expression tree produced by the grammar.
///
/// Symbols are resolved (to variables or the field generator) only when the
/// tree is lowered with [`Expr::to_polynomial`].
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(Rational, SourceSpan),
    Symbol(String, SourceSpan),
    Neg(Box<Expr>, SourceSpan),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32, SourceSpan),
}

impl Expr {
    pub fn span(&self) -> SourceSpan {
        match self {
            Expr::Number(_, s) | Expr::Symbol(_, s) | Expr::Neg(_, s) | Expr::Pow(_, _, s) => *s,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.span().to(b.span()),
        }
    }

    pub fn to_polynomial<C: Coefficient>(
        &self,
        ring: &C::Ring,
        vars: &Variables,
    ) -> Result<Polynomial<C>, ParseError> {
        Ok(match self {
            Expr::Number(q, _) => Polynomial::from_rational(vars, ring, q),
            Expr::Symbol(name, span) => {
                if let Some(idx) = vars.index_of(name) {
                    Polynomial::var_at(vars, ring, idx)
                } else if let Some(g) = C::generator(ring, name) {
                    Polynomial::constant(vars, ring, g)
                } else {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownSymbol(name.clone()),
                        *span,
                    ));
                }
            }
            Expr::Neg(e, _) => -&e.to_polynomial(ring, vars)?,
            Expr::Add(a, b) => &a.to_polynomial(ring, vars)? + &b.to_polynomial(ring, vars)?,
            Expr::Sub(a, b) => &a.to_polynomial(ring, vars)? - &b.to_polynomial(ring, vars)?,
            Expr::Mul(a, b) => &a.to_polynomial(ring, vars)? * &b.to_polynomial(ring, vars)?,
            Expr::Pow(base, e, _) => base.to_polynomial(ring, vars)?.pow(*e),
        })
    }
}

/// Parse a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_at(text, 1, 1)
}

pub(crate) fn parse_expr_at(text: &str, line: usize, column: usize) -> Result<Expr, ParseError> {
    let tokens = tokenize(text, line, column)?;
    if tokens.is_empty() {
        return Err(ParseError::syntax(
            "empty expression",
            SourceSpan::new(line, column, 1),
        ));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::syntax(
            format!("unexpected {}", t.tok.describe()),
            t.span,
        ));
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn last_span(&self) -> SourceSpan {
        self.tokens[self.pos.min(self.tokens.len()) - 1].span
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(t) = self.peek() {
            let span = t.span;
            if t.tok == Tok::Minus {
                self.pos += 1;
                let inner = self.unary()?;
                let s = span.to(inner.span());
                return Ok(Expr::Neg(Box::new(inner), s));
            }
            if t.tok == Tok::Plus {
                self.pos += 1;
                return self.unary();
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let Some(caret) = self.peek().filter(|t| t.tok == Tok::Caret).cloned() else {
            return Ok(base);
        };
        self.pos += 1;
        let bad = |span| {
            ParseError::syntax("expected a non-negative integer exponent after `^`", span)
        };
        let exp = match self.next() {
            Some(Token { tok: Tok::Int(n), span }) => to_exponent(&n, span)?,
            Some(Token { tok: Tok::Minus, span }) => {
                return Err(ParseError::new(ParseErrorKind::NegativeExponent, span))
            }
            Some(Token { tok: Tok::LParen, .. }) => {
                let neg = self.eat(&Tok::Minus);
                let n = match self.next() {
                    Some(Token { tok: Tok::Int(n), span }) => {
                        if neg && !n.is_zero() {
                            return Err(ParseError::new(ParseErrorKind::NegativeExponent, span));
                        }
                        to_exponent(&n, span)?
                    }
                    _ => return Err(bad(caret.span)),
                };
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::syntax("expected `)`", self.last_span()));
                }
                n
            }
            _ => return Err(bad(caret.span)),
        };
        let span = base.span().to(self.last_span());
        Ok(Expr::Pow(Box::new(base), exp, span))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(t) = self.next() else {
            return Err(ParseError::syntax("unexpected end of input", self.last_span()));
        };
        match t.tok {
            Tok::Int(n) => {
                if self.eat(&Tok::Slash) {
                    match self.next() {
                        Some(Token { tok: Tok::Int(d), span }) => {
                            if d.is_zero() {
                                return Err(ParseError::syntax("zero denominator", span));
                            }
                            Ok(Expr::Number(Rational::new(n, d), t.span.to(span)))
                        }
                        _ => Err(ParseError::syntax(
                            "`/` is only allowed between integer literals",
                            self.last_span(),
                        )),
                    }
                } else {
                    Ok(Expr::Number(Rational::from_integer(n), t.span))
                }
            }
            Tok::Ident(s) => Ok(Expr::Symbol(s, t.span)),
            Tok::LParen => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    let span = self.peek().map_or(self.last_span(), |t| t.span);
                    return Err(ParseError::syntax("expected `)`", span));
                }
                Ok(e)
            }
            other => Err(ParseError::syntax(
                format!("unexpected {}", other.describe()),
                t.span,
            )),
        }
    }
}

fn to_exponent(n: &BigInt, span: SourceSpan) -> Result<u32, ParseError> {
    n.to_u32()
        .filter(|&e| e <= 10_000)
        .ok_or_else(|| ParseError::syntax("exponent too large", span))
}
