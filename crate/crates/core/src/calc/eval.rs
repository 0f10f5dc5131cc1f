use thiserror::Error;

use super::lexer::Span;
use super::parser::{Expr, ExprKind};
use crate::error::Error;
use crate::matrix::{left_matrix, right_matrix, Mat4};
use crate::polar::{decompose, PolarForm};
use crate::power::{exp_quaternion, pow_by_squaring};
use crate::quaternion::{CausalCharacter, ClassifyConfig, SplitQuaternion};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Quat(SplitQuaternion),
    Matrix(Mat4),
    Scalar(f64),
    Character(CausalCharacter),
    Polar(PolarForm),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Quat(_) => "quaternion",
            Value::Matrix(_) => "matrix",
            Value::Scalar(_) => "scalar",
            Value::Character(_) => "causal character",
            Value::Polar(_) => "polar form",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("{name}: {0}", name = .0.name())]
    Algebra(Error),
    #[error("expected a quaternion, found a {found}")]
    TypeMismatch { found: &'static str },
    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("exponent must be an integer")]
    NonIntegerExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("evaluation error at {}..{}: {kind}", span.start, span.end)]
pub struct EvalError {
    pub span: Span,
    pub kind: EvalErrorKind,
}

/// Evaluates an expression tree. Every line is independent; there is no
/// environment.
pub fn eval(e: &Expr) -> Result<Value, EvalError> {
    Evaluator { cfg: ClassifyConfig::default() }.eval(e)
}

struct Evaluator {
    cfg: ClassifyConfig,
}

impl Evaluator {
    fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let fail = |kind| EvalError { span: e.span, kind };
        let algebra = |err| fail(EvalErrorKind::Algebra(err));
        let value = match &e.kind {
            ExprKind::Literal(q) => Value::Quat(q.ensure_finite().map_err(algebra)?),
            ExprKind::Neg(a) => Value::Quat(-self.quat(a)?),
            ExprKind::Add(a, b) => Value::Quat(self.quat(a)? + self.quat(b)?),
            ExprKind::Sub(a, b) => Value::Quat(self.quat(a)? - self.quat(b)?),
            ExprKind::Mul(a, b) => Value::Quat(self.quat(a)? * self.quat(b)?),
            ExprKind::Pow(a, n) => Value::Quat(self.power(self.quat(a)?, *n).map_err(algebra)?),
            ExprKind::Call(name, args) => self.call(name, args, e.span)?,
        };
        if let Value::Quat(q) = value {
            q.ensure_finite().map_err(|_| algebra(Error::OverflowedToInfinity))?;
        }
        Ok(value)
    }

    fn quat(&self, e: &Expr) -> Result<SplitQuaternion, EvalError> {
        match self.eval(e)? {
            Value::Quat(q) => Ok(q),
            Value::Scalar(s) => Ok(SplitQuaternion::raw(s, 0.0, 0.0, 0.0)),
            other => Err(EvalError {
                span: e.span,
                kind: EvalErrorKind::TypeMismatch { found: other.type_name() },
            }),
        }
    }

    fn power(&self, q: SplitQuaternion, n: i64) -> Result<SplitQuaternion, Error> {
        let base = if n < 0 {
            if q.is_lightlike(&self.cfg) {
                return Err(Error::NegativePowerOfLightlike);
            }
            q.inverse(&self.cfg)?
        } else {
            q
        };
        pow_by_squaring(&base, n.unsigned_abs())
            .ensure_finite()
            .map_err(|_| Error::OverflowedToInfinity)
    }

    fn call(&self, name: &str, args: &[Expr], span: Span) -> Result<Value, EvalError> {
        let expected = if name == "pow" { 2 } else { 1 };
        if args.len() != expected {
            return Err(EvalError {
                span,
                kind: EvalErrorKind::Arity { name: name.to_string(), expected, got: args.len() },
            });
        }
        let q = self.quat(&args[0])?;
        let algebra = |err| EvalError { span, kind: EvalErrorKind::Algebra(err) };
        let cfg = &self.cfg;
        Ok(match name {
            "conj" => Value::Quat(q.conjugate()),
            "norm" => Value::Scalar(q.norm()),
            "iq" => Value::Scalar(q.iq()),
            "classify" => Value::Character(q.classify(cfg)),
            "polar" => Value::Polar(decompose(&q, cfg).map_err(algebra)?),
            "normalize" => Value::Quat(q.normalize(cfg).map_err(algebra)?),
            "inv" => Value::Quat(q.inverse(cfg).map_err(algebra)?),
            "exp" => Value::Quat(exp_quaternion(&q).map_err(algebra)?),
            "matl" => Value::Matrix(left_matrix(&q)),
            "matr" => Value::Matrix(right_matrix(&q)),
            "pow" => {
                let n = self.integer(&args[1])?;
                Value::Quat(self.power(q, n).map_err(algebra)?)
            }
            // the parser only admits registered names
            other => unreachable!("unregistered function {other}"),
        })
    }

    fn integer(&self, e: &Expr) -> Result<i64, EvalError> {
        let q = self.quat(e)?;
        let n = q.scalar();
        let integral = q.vector().is_zero() && n.fract() == 0.0 && n.abs() < 9.2e18;
        if !integral {
            return Err(EvalError { span: e.span, kind: EvalErrorKind::NonIntegerExponent });
        }
        Ok(n as i64)
    }
}
