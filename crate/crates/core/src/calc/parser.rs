//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := unary ("*" unary)* ;
//! unary  := "-" unary | power ;
//! power  := atom ("^" signed-integer)? ;
//! atom   := number unit? | unit | "(" expr ")" | ident "(" expr ("," expr)* ")" ;
//! unit   := "i" | "j" | "k" ;
//! ```
//!
//! `^` binds tightest and does not chain; `2i` is the literal `2·i`.

use std::fmt;

use thiserror::Error;

use super::lexer::{Span, Token, TokenKind};
use crate::quaternion::SplitQuaternion;

/// Names accepted in call position.
pub const FUNCTIONS: &[&str] = &[
    "conj", "norm", "iq", "classify", "polar", "normalize", "inv", "exp", "matl", "matr", "pow",
];

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Literal(SplitQuaternion),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: expected {}, found {found}", ExpectedList(.expected))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

struct ExpectedList<'a>(&'a [String]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [] => f.write_str("nothing"),
            [one] => f.write_str(one),
            many => write!(f, "one of {}", many.join(", ")),
        }
    }
}

const ATOM_START: &[&str] = &["number", "'i'", "'j'", "'k'", "'('", "'-'", "function name"];

/// Parses a full token stream (as produced by `tokenize`).
pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        // the stream always ends with End; never step past it
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &'t Token {
        let t = self.peek();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            position: t.span.start,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.kind.to_string(),
        }
    }

    fn expect(&mut self, kind: TokenKind, label: &str) -> Result<&'t Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.peek().kind == TokenKind::End {
            Ok(())
        } else {
            Err(self.error(&["'+'", "'-'", "'*'", "end of input"]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                TokenKind::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr { kind: op(Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            let minus = self.bump().span;
            let inner = self.unary()?;
            let span = minus.join(inner.span);
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let (exponent, exp_span) = self.signed_integer()?;
        let span = base.span.join(exp_span);
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), exponent), span })
    }

    fn signed_integer(&mut self) -> Result<(i64, Span), ParseError> {
        const EXPECTED: &[&str] = &["integer exponent"];
        let start = self.peek().span;
        let negative = self.peek().kind == TokenKind::Minus;
        if negative {
            self.bump();
        }
        let tok = self.peek();
        let digits_only = matches!(tok.kind, TokenKind::Number(_))
            && tok.text.bytes().all(|b| b.is_ascii_digit());
        let magnitude = if digits_only { tok.text.parse::<i64>().ok() } else { None };
        let Some(magnitude) = magnitude else {
            return Err(self.error(EXPECTED));
        };
        self.bump();
        Ok((if negative { -magnitude } else { magnitude }, start.join(tok.span)))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek();
        match &tok.kind {
            TokenKind::Number(value) => {
                self.bump();
                let value = *value;
                let (q, span) = match unit_literal(&self.peek().kind, value) {
                    Some(q) => {
                        let unit = self.bump().span;
                        (q, tok.span.join(unit))
                    }
                    None => (SplitQuaternion::raw(value, 0.0, 0.0, 0.0), tok.span),
                };
                Ok(Expr { kind: ExprKind::Literal(q), span })
            }
            TokenKind::UnitI | TokenKind::UnitJ | TokenKind::UnitK => {
                self.bump();
                let q = unit_literal(&tok.kind, 1.0).expect("unit token");
                Ok(Expr { kind: ExprKind::Literal(q), span: tok.span })
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                let close = self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr { kind: inner.kind, span: tok.span.join(close.span) })
            }
            TokenKind::Ident(name) => {
                if !FUNCTIONS.contains(&name.as_str()) {
                    return Err(ParseError {
                        position: tok.span.start,
                        expected: FUNCTIONS.iter().map(|f| format!("'{f}'")).collect(),
                        found: tok.kind.to_string(),
                    });
                }
                self.bump();
                self.expect(TokenKind::LParen, "'('")?;
                let mut args = vec![self.expr()?];
                while self.peek().kind == TokenKind::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                let close = self.expect(TokenKind::RParen, "')'").map_err(|mut e| {
                    e.expected.insert(0, "','".to_string());
                    e
                })?;
                Ok(Expr { kind: ExprKind::Call(name.clone(), args), span: tok.span.join(close.span) })
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

fn unit_literal(kind: &TokenKind, coeff: f64) -> Option<SplitQuaternion> {
    Some(match kind {
        TokenKind::UnitI => SplitQuaternion::raw(0.0, coeff, 0.0, 0.0),
        TokenKind::UnitJ => SplitQuaternion::raw(0.0, 0.0, coeff, 0.0),
        TokenKind::UnitK => SplitQuaternion::raw(0.0, 0.0, 0.0, coeff),
        _ => return None,
    })
}
