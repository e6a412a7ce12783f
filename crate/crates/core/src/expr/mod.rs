//! Expression trees for closed forms and series terms.

mod display;
mod exact;
mod numeric;

pub use exact::{eval_exact_qsqrt5, eval_exact_rational, ExactEvaluator, ExactField};
pub use numeric::{eval_numeric, NumericEvaluator};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::arbreal::ArbError;
use crate::exactnum::ExactError;

/// Name of the variable bound by a quadrature node.
pub const QUAD_VAR: &str = "x";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Pi,
    Sqrt5,
    Alpha,
    Beta,
    LnAlpha,
    CatalanG,
    Zeta3,
    Omega,
}

impl Constant {
    pub const ALL: [Constant; 8] = [
        Constant::Pi,
        Constant::Sqrt5,
        Constant::Alpha,
        Constant::Beta,
        Constant::LnAlpha,
        Constant::CatalanG,
        Constant::Zeta3,
        Constant::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::Sqrt5 => "sqrt5",
            Constant::Alpha => "alpha",
            Constant::Beta => "beta",
            Constant::LnAlpha => "lnalpha",
            Constant::CatalanG => "catalanG",
            Constant::Zeta3 => "zeta3",
            Constant::Omega => "omega",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sqrt,
    Ln,
    Sin,
    Cos,
    Arcsin,
    Arctan,
}

impl UnaryOp {
    pub const FUNCTIONS: [UnaryOp; 6] =
        [UnaryOp::Sqrt, UnaryOp::Ln, UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Arcsin, UnaryOp::Arctan];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Ln => "ln",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Arcsin => "arcsin",
            UnaryOp::Arctan => "arctan",
        }
    }

    pub fn function_from_name(s: &str) -> Option<Self> {
        Self::FUNCTIONS.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqFn {
    Catalan,
    Fibonacci,
    Lucas,
    Binom,
}

impl SeqFn {
    pub fn name(self) -> &'static str {
        match self {
            SeqFn::Catalan => "C",
            SeqFn::Fibonacci => "F",
            SeqFn::Lucas => "L",
            SeqFn::Binom => "binom",
        }
    }

    pub fn arity(self) -> usize {
        if self == SeqFn::Binom {
            2
        } else {
            1
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [SeqFn::Catalan, SeqFn::Fibonacci, SeqFn::Lucas, SeqFn::Binom].into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    /// Rational literal, normalized with positive denominator.
    Rat(BigRational),
    Const(Constant),
    Var(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Seq(SeqFn, Vec<Expr>),
    /// `quad(body, lower, upper)`; `body` may use the bound variable `x`.
    Quad(Box<Expr>, Box<Expr>, Box<Expr>),
    Clausen(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn unary(op: UnaryOp, e: Expr) -> Expr {
        Expr::Unary(op, Box::new(e))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    /// Free variables; `x` is bound inside quadrature bodies.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out, false);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>, in_quad: bool) {
        match self {
            Expr::Int(_) | Expr::Rat(_) | Expr::Const(_) => {}
            Expr::Var(v) => {
                if !(in_quad && v == QUAD_VAR) {
                    out.insert(v.clone());
                }
            }
            Expr::Unary(_, a) | Expr::Clausen(a) => a.collect_vars(out, in_quad),
            Expr::Binary(_, a, b) => {
                a.collect_vars(out, in_quad);
                b.collect_vars(out, in_quad);
            }
            Expr::Seq(_, args) => args.iter().for_each(|a| a.collect_vars(out, in_quad)),
            Expr::Quad(body, lo, hi) => {
                body.collect_vars(out, true);
                lo.collect_vars(out, in_quad);
                hi.collect_vars(out, in_quad);
            }
        }
    }

    pub fn contains_quad(&self) -> bool {
        match self {
            Expr::Quad(..) => true,
            Expr::Int(_) | Expr::Rat(_) | Expr::Const(_) | Expr::Var(_) => false,
            Expr::Unary(_, a) | Expr::Clausen(a) => a.contains_quad(),
            Expr::Binary(_, a, b) => a.contains_quad() || b.contains_quad(),
            Expr::Seq(_, args) => args.iter().any(Expr::contains_quad),
        }
    }

    /// Replaces free occurrences of `var` by the integer `value`.
    pub fn substitute(&self, var: &str, value: i64) -> Result<Expr, ExprError> {
        if var == QUAD_VAR && self.contains_quad() {
            return Err(ExprError::BoundVariable(var.to_string()));
        }
        Ok(self.subst(var, value, false))
    }

    fn subst(&self, var: &str, value: i64, in_quad: bool) -> Expr {
        match self {
            Expr::Var(v) if v == var && !(in_quad && v == QUAD_VAR) => Expr::int(value),
            Expr::Int(_) | Expr::Rat(_) | Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Unary(op, a) => Expr::unary(*op, a.subst(var, value, in_quad)),
            Expr::Clausen(a) => Expr::Clausen(Box::new(a.subst(var, value, in_quad))),
            Expr::Binary(op, a, b) => {
                Expr::binary(*op, a.subst(var, value, in_quad), b.subst(var, value, in_quad))
            }
            Expr::Seq(f, args) => Expr::Seq(*f, args.iter().map(|a| a.subst(var, value, in_quad)).collect()),
            Expr::Quad(body, lo, hi) => Expr::Quad(
                Box::new(body.subst(var, value, true)),
                Box::new(lo.subst(var, value, in_quad)),
                Box::new(hi.subst(var, value, in_quad)),
            ),
        }
    }
}

/// Integer bindings for free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Env(BTreeMap<String, i64>);

impl Env {
    pub fn new() -> Self {
        Env(BTreeMap::new())
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: i64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `n=3;s=-2`, empty string for no bindings.
    pub fn label(&self) -> String {
        self.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Error)]
pub enum ExprError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("cannot substitute the quadrature-bound variable `{0}`")]
    BoundVariable(String),
    #[error("not representable exactly: `{0}`")]
    NotRepresentable(String),
    #[error("argument of `{0}` is not an integer")]
    NonInteger(String),
    #[error("in `{at}`: {what}")]
    Domain { at: String, what: String },
    #[error("integer too large in `{0}`")]
    Overflow(String),
    #[error("in `{at}`: {source}")]
    Exact {
        at: String,
        #[source]
        source: ExactError,
    },
    #[error("in `{at}`: {source}")]
    Numeric {
        at: String,
        #[source]
        source: ArbError,
    },
}

impl From<ArbError> for ExprError {
    fn from(source: ArbError) -> Self {
        ExprError::Numeric { at: String::new(), source }
    }
}

impl ExprError {
    pub fn is_convergence(&self) -> bool {
        matches!(self, ExprError::Numeric { source: ArbError::Convergence { .. }, .. })
    }
}
