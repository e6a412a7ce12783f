use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{BinOp, Constant, Env, Expr, ExprError, SeqFn, UnaryOp, QUAD_VAR};
use crate::exactnum::{binomial_ext, catalan, fibonacci_lucas, rat_pow, ExactError, QuadRat};

/// A field the exact evaluator can compute in.
pub trait ExactField: Clone + PartialEq + std::fmt::Display {
    fn from_rational(r: BigRational) -> Self;
    fn constant(c: Constant) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, ExactError>;
    fn neg(&self) -> Self;
    fn powi(&self, n: i64) -> Result<Self, ExactError>;
    fn as_rational(&self) -> Option<BigRational>;
}

impl ExactField for BigRational {
    fn from_rational(r: BigRational) -> Self {
        r
    }
    fn constant(_: Constant) -> Option<Self> {
        None
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            Err(ExactError::DivisionByZero)
        } else {
            Ok(self / o)
        }
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn powi(&self, n: i64) -> Result<Self, ExactError> {
        rat_pow(self, n)
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl ExactField for QuadRat {
    fn from_rational(r: BigRational) -> Self {
        QuadRat::from_rational(r)
    }
    fn constant(c: Constant) -> Option<Self> {
        match c {
            Constant::Sqrt5 => Some(QuadRat::sqrt5()),
            Constant::Alpha => Some(QuadRat::alpha()),
            Constant::Beta => Some(QuadRat::beta()),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn powi(&self, n: i64) -> Result<Self, ExactError> {
        self.pow(n)
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }
}

/// Exact evaluator with memoized sequence values, reusable across bindings.
#[derive(Default)]
pub struct ExactEvaluator {
    catalan: HashMap<i64, BigInt>,
    binom: HashMap<(i64, i64), BigInt>,
    fib: HashMap<i64, (BigInt, BigInt)>,
}

fn rational_int(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

impl ExactEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval<F: ExactField>(&mut self, e: &Expr, env: &Env) -> Result<F, ExprError> {
        let exact_err = |source| ExprError::Exact { at: e.to_string(), source };
        match e {
            Expr::Int(n) => Ok(F::from_rational(BigRational::from_integer(n.clone()))),
            Expr::Rat(r) => Ok(F::from_rational(r.clone())),
            Expr::Const(c) => F::constant(*c).ok_or_else(|| ExprError::NotRepresentable(e.to_string())),
            Expr::Var(v) => match env.get(v) {
                Some(x) => Ok(F::from_rational(BigRational::from_integer(BigInt::from(x)))),
                None if v == QUAD_VAR => Err(ExprError::NotRepresentable(e.to_string())),
                None => Err(ExprError::Unbound(v.clone())),
            },
            Expr::Unary(UnaryOp::Neg, a) => Ok(self.eval::<F>(a, env)?.neg()),
            Expr::Unary(..) | Expr::Quad(..) | Expr::Clausen(_) => {
                Err(ExprError::NotRepresentable(e.to_string()))
            }
            Expr::Binary(op, a, b) => {
                if *op == BinOp::Pow {
                    let k = match self.integer_arg(b, env, e) {
                        Err(ExprError::NonInteger(at)) => return Err(ExprError::NotRepresentable(at)),
                        other => other?,
                    };
                    let base = self.eval::<F>(a, env)?;
                    return base.powi(k).map_err(exact_err);
                }
                let x = self.eval::<F>(a, env)?;
                let y = self.eval::<F>(b, env)?;
                match op {
                    BinOp::Add => Ok(x.add(&y)),
                    BinOp::Sub => Ok(x.sub(&y)),
                    BinOp::Mul => Ok(x.mul(&y)),
                    BinOp::Div => x.div(&y).map_err(exact_err),
                    BinOp::Pow => unreachable!(),
                }
            }
            Expr::Seq(f, args) => {
                let v = self.sequence(*f, args, env, e)?;
                Ok(F::from_rational(BigRational::from_integer(v)))
            }
        }
    }

    /// Exact integer value of `arg`, which must be rational and integral.
    pub(crate) fn integer_arg(&mut self, arg: &Expr, env: &Env, ctx: &Expr) -> Result<i64, ExprError> {
        let r: BigRational = match self.eval::<BigRational>(arg, env) {
            Err(ExprError::NotRepresentable(_)) => return Err(ExprError::NotRepresentable(ctx.to_string())),
            other => other?,
        };
        let n = rational_int(&r).ok_or_else(|| ExprError::NonInteger(ctx.to_string()))?;
        n.to_i64().ok_or_else(|| ExprError::Overflow(ctx.to_string()))
    }

    pub(crate) fn sequence(&mut self, f: SeqFn, args: &[Expr], env: &Env, ctx: &Expr) -> Result<BigInt, ExprError> {
        let n = self.integer_arg(&args[0], env, ctx)?;
        match f {
            SeqFn::Catalan => {
                if n < 0 {
                    return Err(ExprError::Domain { at: ctx.to_string(), what: "negative Catalan index".into() });
                }
                Ok(self.catalan.entry(n).or_insert_with(|| catalan(n as u64)).clone())
            }
            SeqFn::Fibonacci => Ok(self.fib.entry(n).or_insert_with(|| fibonacci_lucas(n)).0.clone()),
            SeqFn::Lucas => Ok(self.fib.entry(n).or_insert_with(|| fibonacci_lucas(n)).1.clone()),
            SeqFn::Binom => {
                let k = self.integer_arg(&args[1], env, ctx)?;
                Ok(self.binom.entry((n, k)).or_insert_with(|| binomial_ext(n, k)).clone())
            }
        }
    }
}

/// Exact rational value, or `NotRepresentable`.
pub fn eval_exact_rational(e: &Expr, env: &Env) -> Result<BigRational, ExprError> {
    ExactEvaluator::new().eval(e, env)
}

/// Exact value in Q(√5), or `NotRepresentable`.
pub fn eval_exact_qsqrt5(e: &Expr, env: &Env) -> Result<QuadRat, ExprError> {
    ExactEvaluator::new().eval(e, env)
}
