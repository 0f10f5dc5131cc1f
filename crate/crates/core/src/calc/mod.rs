//! Expression calculator over split quaternions: tokenizer, parser,
//! evaluator, text/JSON rendering and a line-at-a-time REPL.

pub mod eval;
pub mod lexer;
pub mod parser;

use std::io::{self, BufRead, Write};

use serde_json::{json, Number, Value as Json};
use thiserror::Error;

pub use eval::{eval, EvalError, EvalErrorKind, Value};
pub use lexer::{tokenize, LexError, Span, Token, TokenKind};
pub use parser::{parse, Expr, ExprKind, ParseError, FUNCTIONS};

use crate::quaternion::format_real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl CalcError {
    /// Source range the error points at.
    pub fn span(&self) -> Span {
        match self {
            CalcError::Lex(e) => Span::new(e.position, e.position + e.found.len_utf8()),
            CalcError::Parse(e) => Span::new(e.position, e.position + 1),
            CalcError::Eval(e) => e.span,
        }
    }

    /// The source line followed by a caret line under the offending range.
    pub fn annotate(&self, src: &str) -> String {
        let span = self.span();
        let start = span.start.min(src.len());
        let width = src.get(start..span.end.min(src.len())).map_or(0, |s| s.chars().count()).max(1);
        let pad = src[..start].chars().count();
        format!("error: {self}\n  {src}\n  {}{}", " ".repeat(pad), "^".repeat(width))
    }
}

/// Tokenize, parse and evaluate one line.
pub fn evaluate(src: &str) -> Result<Value, CalcError> {
    let tokens = tokenize(src)?;
    let expr = parse(&tokens)?;
    Ok(eval(&expr)?)
}

/// Human-readable rendering of a value.
pub fn render_text(v: &Value) -> String {
    match v {
        Value::Quat(q) => q.to_string(),
        Value::Scalar(x) => format_real(*x),
        Value::Matrix(m) => m.to_string(),
        Value::Character(c) => c.to_string(),
        Value::Polar(p) => format!(
            "polar(kind={}, n={}, theta={}, eps=({}, {}, {}), sign={})",
            p.kind.as_str(),
            format_real(p.n),
            format_real(p.theta),
            format_real(p.eps.u1),
            format_real(p.eps.u2),
            format_real(p.eps.u3),
            p.sign
        ),
    }
}

/// Shortest round-trip JSON number; integral values print without a
/// fractional part.
pub fn json_number(x: f64) -> Json {
    if x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 {
        Json::Number(Number::from(x as i64))
    } else {
        Number::from_f64(x).map_or(Json::Null, Json::Number)
    }
}

fn json_array(xs: &[f64]) -> Json {
    Json::Array(xs.iter().map(|&x| json_number(x)).collect())
}

pub fn render_json(v: &Value) -> Json {
    match v {
        Value::Quat(q) => json!({ "type": "quat", "q": json_array(&q.to_array()) }),
        Value::Scalar(x) => json!({ "type": "scalar", "value": json_number(*x) }),
        Value::Matrix(m) => json!({
            "type": "matrix",
            "rows": Json::Array(m.rows().iter().map(|r| json_array(r)).collect()),
        }),
        Value::Character(c) => json!({ "type": "character", "value": c.as_str().to_lowercase() }),
        Value::Polar(p) => json!({
            "type": "polar",
            "kind": p.kind.as_str(),
            "n": json_number(p.n),
            "theta": json_number(p.theta),
            "eps": json_array(&p.eps.to_array()),
            "sign": p.sign,
        }),
    }
}

/// JSON form of an error, for `--json` output.
pub fn render_json_error(e: &CalcError) -> Json {
    let kind = match e {
        CalcError::Lex(_) => "lex",
        CalcError::Parse(_) => "parse",
        CalcError::Eval(_) => "eval",
    };
    let span = e.span();
    json!({ "type": "error", "kind": kind, "message": e.to_string(), "span": [span.start, span.end] })
}

/// Text shown by `:help`.
pub const HELP: &str = "\
Enter an expression such as (1+2i+j)^3 or matl(i).
  literals   numbers, i, j, k, and 2i-style products
  operators  + - * and ^ with an integer exponent (^ does not chain)
  functions  conj norm iq classify polar normalize inv exp matl matr pow(q, n)
  commands   :help  :quit";

/// Line-at-a-time loop. Returns when input ends or on `:quit`.
pub fn repl<R: BufRead, W: Write>(input: R, mut out: W, prompt: bool) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let src = line.trim();
        match src {
            "" => continue,
            ":quit" | ":q" => break,
            ":help" => writeln!(out, "{HELP}")?,
            _ if src.starts_with(':') => writeln!(out, "unknown command {src}; try :help")?,
            _ => match evaluate(src) {
                Ok(v) => writeln!(out, "{}", render_text(&v))?,
                Err(e) => writeln!(out, "{}", e.annotate(src))?,
            },
        }
    }
    Ok(())
}

/// One `expression => expected` case from a golden file.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCase {
    pub line: usize,
    pub expr: String,
    pub expected: String,
}

/// Parses golden-file text: one `expr => expected` per line, `#` comments
/// and blank lines ignored. Expected text is the rendered value, or the
/// single-line error message.
pub fn parse_golden(text: &str) -> Vec<GoldenCase> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .filter_map(|(i, l)| {
            let (expr, expected) = l.split_once(" => ")?;
            Some(GoldenCase { line: i + 1, expr: expr.to_string(), expected: expected.to_string() })
        })
        .collect()
}

/// Output of one line, as compared in golden files. Matrices render on a
/// single line as `[a, b, c, d]; [..]; [..]; [..]`.
pub fn golden_output(src: &str) -> String {
    match evaluate(src) {
        Ok(Value::Matrix(m)) => m
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.map(format_real).join(", ")))
            .collect::<Vec<_>>()
            .join("; "),
        Ok(v) => render_text(&v),
        Err(e) => e.to_string(),
    }
}
