use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::EngineError;
use crate::arbreal::ArbReal;
use crate::exactnum::QuadRat;
use crate::expr::{eval_numeric, BinOp, Constant, Env, ExactEvaluator, Expr, ExprError, UnaryOp};
use crate::seriesdsl::{IdentityRecord, Lhs};

/// Both sides of an exact comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOutcome<T> {
    pub lhs: T,
    pub rhs: T,
    pub equal: bool,
}

fn eval_err(source: ExprError) -> EngineError {
    EngineError::Eval { at_index: None, source }
}

fn int_of(ev: &mut ExactEvaluator, e: &Expr, env: &Env) -> Result<i64, EngineError> {
    let r: BigRational = ev.eval(e, env).map_err(eval_err)?;
    if !r.is_integer() {
        return Err(EngineError::Unsupported(format!("summation bound `{e}` is not an integer")));
    }
    r.to_integer().to_i64().ok_or_else(|| EngineError::Unsupported(format!("summation bound `{e}` too large")))
}

/// Exact check of a finite-sum record at the binding `env` (which fixes `n`).
pub fn finite_check_with(
    ev: &mut ExactEvaluator,
    record: &IdentityRecord,
    env: &Env,
) -> Result<ExactOutcome<BigRational>, EngineError> {
    let Lhs::Finite(spec) = &record.lhs else {
        return Err(EngineError::Unsupported(format!("`{}` is not a finite-sum record", record.id)));
    };
    let lo = int_of(ev, &spec.lower, env)?;
    let hi = int_of(ev, &spec.upper, env)?;
    let mut lhs = BigRational::zero();
    let mut e = env.clone();
    for k in lo..=hi {
        e.set(&spec.index, k);
        let t: BigRational = ev.eval(&spec.summand, &e).map_err(|source| EngineError::Eval { at_index: Some(k), source })?;
        lhs += t;
    }
    let rhs: BigRational = ev.eval(&record.rhs, env).map_err(eval_err)?;
    Ok(ExactOutcome { equal: lhs == rhs, lhs, rhs })
}

pub fn finite_check(record: &IdentityRecord, env: &Env) -> Result<ExactOutcome<BigRational>, EngineError> {
    finite_check_with(&mut ExactEvaluator::new(), record, env)
}

fn lhs_expr(record: &IdentityRecord) -> Result<&Expr, EngineError> {
    match &record.lhs {
        Lhs::Expr(e) => Ok(e),
        _ => Err(EngineError::Unsupported(format!("`{}` has no expression left-hand side", record.id))),
    }
}

/// Exact equality in Q(√5). Fails with `NotRepresentable` when a side leaves the field.
pub fn algebraic_check(record: &IdentityRecord, env: &Env) -> Result<ExactOutcome<QuadRat>, EngineError> {
    let mut ev = ExactEvaluator::new();
    let lhs: QuadRat = ev.eval(lhs_expr(record)?, env).map_err(eval_err)?;
    let rhs: QuadRat = ev.eval(&record.rhs, env).map_err(eval_err)?;
    Ok(ExactOutcome { equal: lhs == rhs, lhs, rhs })
}

/// Outcome of a squaring-plus-sign check.
#[derive(Clone, Debug)]
pub struct RadicalOutcome {
    pub lhs_square: QuadRat,
    pub rhs_square: QuadRat,
    pub squares_equal: bool,
    pub lhs_value: ArbReal,
    pub rhs_value: ArbReal,
    pub signs_agree: bool,
}

impl RadicalOutcome {
    pub fn passed(&self) -> bool {
        self.squares_equal && self.signs_agree
    }
}

/// Square of `e` computed exactly in Q(√5), pushing the square through
/// products, quotients, powers and square roots.
pub fn square_exact(e: &Expr, env: &Env, ev: &mut ExactEvaluator) -> Result<QuadRat, ExprError> {
    match e {
        Expr::Unary(UnaryOp::Sqrt, a) => ev.eval(a, env),
        Expr::Unary(UnaryOp::Neg, a) => square_exact(a, env, ev),
        Expr::Const(Constant::Omega) => Ok(&QuadRat::sqrt5() * &QuadRat::alpha()),
        Expr::Binary(BinOp::Mul, a, b) => Ok(&square_exact(a, env, ev)? * &square_exact(b, env, ev)?),
        Expr::Binary(BinOp::Div, a, b) => {
            let num = square_exact(a, env, ev)?;
            let den = square_exact(b, env, ev)?;
            num.checked_div(&den).map_err(|source| ExprError::Exact { at: e.to_string(), source })
        }
        Expr::Binary(BinOp::Pow, a, b) => {
            let k: BigRational = ev.eval(b, env)?;
            let exact_err = |source| ExprError::Exact { at: e.to_string(), source };
            let two_k = &k * BigRational::from_integer(2.into());
            let p = two_k
                .is_integer()
                .then(|| two_k.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| ExprError::NotRepresentable(e.to_string()))?;
            if k.is_integer() {
                square_exact(a, env, ev)?.pow(k.to_integer().to_i64().expect("fits")).map_err(exact_err)
            } else {
                let base: QuadRat = ev.eval(a, env)?;
                base.pow(p).map_err(exact_err)
            }
        }
        _ => {
            let v: QuadRat = ev.eval(e, env)?;
            Ok(&v * &v)
        }
    }
}

/// Squares both sides exactly and compares signs numerically at `digits`.
pub fn radical_check(record: &IdentityRecord, env: &Env, digits: u32) -> Result<RadicalOutcome, EngineError> {
    let lhs = lhs_expr(record)?;
    let mut ev = ExactEvaluator::new();
    let unsupported = |side: &str, err: ExprError| match err {
        ExprError::NotRepresentable(at) => EngineError::Unsupported(format!(
            "{side} does not square into Q(√5) (at `{at}`)"
        )),
        other => eval_err(other),
    };
    let ls = square_exact(lhs, env, &mut ev).map_err(|e| unsupported("left-hand side", e))?;
    let rs = square_exact(&record.rhs, env, &mut ev).map_err(|e| unsupported("right-hand side", e))?;
    let lv = eval_numeric(lhs, env, digits).map_err(eval_err)?;
    let rv = eval_numeric(&record.rhs, env, digits).map_err(eval_err)?;
    Ok(RadicalOutcome {
        squares_equal: ls == rs,
        lhs_square: ls,
        rhs_square: rs,
        signs_agree: lv.signum() == rv.signum(),
        lhs_value: lv,
        rhs_value: rv,
    })
}
