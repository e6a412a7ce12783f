use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{BinOp, Constant, Env, ExactEvaluator, Expr, ExprError, SeqFn, UnaryOp, QUAD_VAR};
use crate::arbreal::{self, working_digits, ArbError, ArbReal};
use crate::exactnum::binomial_ext;

/// Numeric evaluator at a fixed target precision. Keeps factorial and
/// Fibonacci/Lucas caches so summing many terms stays cheap.
pub struct NumericEvaluator {
    target: u32,
    work: u32,
    exact: ExactEvaluator,
    factorials: Vec<ArbReal>,
    fib: HashMap<i64, ArbReal>,
    lucas: HashMap<i64, ArbReal>,
    bound: Vec<ArbReal>,
}

impl NumericEvaluator {
    pub fn new(target: u32) -> Self {
        let work = working_digits(target);
        NumericEvaluator {
            target,
            work,
            exact: ExactEvaluator::new(),
            factorials: vec![ArbReal::one(work + 8)],
            fib: HashMap::new(),
            lucas: HashMap::new(),
            bound: Vec::new(),
        }
    }

    pub fn target_digits(&self) -> u32 {
        self.target
    }

    pub fn working_digits(&self) -> u32 {
        self.work
    }

    /// Value at working precision (not yet rounded to the target).
    pub fn eval(&mut self, e: &Expr, env: &Env) -> Result<ArbReal, ExprError> {
        let w = self.work;
        let num = |source: ArbError| ExprError::Numeric { at: e.to_string(), source };
        match e {
            Expr::Int(n) => Ok(ArbReal::from_bigint(n, w)),
            Expr::Rat(r) => Ok(ArbReal::from_rational(r, w)),
            Expr::Const(c) => Ok(constant(*c, w)),
            Expr::Var(v) => {
                if v == QUAD_VAR {
                    if let Some(x) = self.bound.last() {
                        return Ok(x.clone());
                    }
                }
                env.get(v).map(|x| ArbReal::from_i64(x, w)).ok_or_else(|| ExprError::Unbound(v.clone()))
            }
            Expr::Unary(op, a) => {
                let x = self.eval(a, env)?;
                match op {
                    UnaryOp::Neg => Ok(-x),
                    UnaryOp::Sqrt => x.sqrt().map_err(num),
                    UnaryOp::Ln => x.ln().map_err(num),
                    UnaryOp::Sin => x.sin().map_err(num),
                    UnaryOp::Cos => x.cos().map_err(num),
                    UnaryOp::Arcsin => x.arcsin().map_err(num),
                    UnaryOp::Arctan => x.arctan().map_err(num),
                }
            }
            Expr::Binary(BinOp::Pow, a, b) => {
                let k: BigRational = match self.exact.eval(b, env) {
                    Err(ExprError::NotRepresentable(_)) => {
                        return Err(ExprError::NotRepresentable(format!("non-rational exponent in {e}")))
                    }
                    other => other?,
                };
                let x = self.eval(a, env)?;
                if x.is_zero() && k.is_negative() {
                    return Err(num(ArbError::DivisionByZero));
                }
                if x.is_zero() && k.is_zero() {
                    return Ok(ArbReal::one(w));
                }
                x.pow_rational(k.numer(), k.denom()).map_err(num)
            }
            Expr::Binary(op, a, b) => {
                let x = self.eval(a, env)?;
                let y = self.eval(b, env)?;
                match op {
                    BinOp::Add => Ok(&x + &y),
                    BinOp::Sub => Ok(&x - &y),
                    BinOp::Mul => Ok(&x * &y),
                    BinOp::Div => x.checked_div(&y).map_err(num),
                    BinOp::Pow => unreachable!(),
                }
            }
            Expr::Seq(f, args) => self.sequence(*f, args, env, e),
            Expr::Quad(body, lo, hi) => {
                let a = self.eval(lo, env)?;
                let b = self.eval(hi, env)?;
                let qd = self.target + 3;
                let mut f = |x: &ArbReal| -> Result<ArbReal, ExprError> {
                    self.bound.push(x.clone());
                    let r = self.eval(body, env);
                    self.bound.pop();
                    r
                };
                let out = arbreal::tanh_sinh(&mut f, &a, &b, qd).map_err(|err| match err {
                    ExprError::Numeric { at, source } if at.is_empty() => num(source),
                    other => other,
                })?;
                Ok(out.value.with_digits(w))
            }
            Expr::Clausen(a) => {
                let t = self.eval(a, env)?.with_digits(self.target + 3);
                Ok(arbreal::clausen2(&t).map_err(num)?.with_digits(w))
            }
        }
    }

    fn factorial(&mut self, n: usize) -> ArbReal {
        while self.factorials.len() <= n {
            let k = self.factorials.len() as i64;
            let next = self.factorials[k as usize - 1].mul_i64(k);
            self.factorials.push(next);
        }
        self.factorials[n].clone()
    }

    fn sequence(&mut self, f: SeqFn, args: &[Expr], env: &Env, ctx: &Expr) -> Result<ArbReal, ExprError> {
        let w = self.work;
        let n = self.exact.integer_arg(&args[0], env, ctx)?;
        let div = |a: ArbReal, b: ArbReal| a.checked_div(&b).expect("factorials are nonzero").with_digits(w);
        match f {
            SeqFn::Catalan => {
                if n < 0 {
                    return Err(ExprError::Domain { at: ctx.to_string(), what: "negative Catalan index".into() });
                }
                let n = n as usize;
                let den = &self.factorial(n) * &self.factorial(n + 1);
                Ok(div(self.factorial(2 * n), den))
            }
            SeqFn::Binom => {
                let k = self.exact.integer_arg(&args[1], env, ctx)?;
                if n < 0 {
                    return Ok(ArbReal::from_bigint(&binomial_ext(n, k), w));
                }
                if k < 0 || k > n {
                    return Ok(ArbReal::zero(w));
                }
                let den = &self.factorial(k as usize) * &self.factorial((n - k) as usize);
                Ok(div(self.factorial(n as usize), den))
            }
            SeqFn::Fibonacci | SeqFn::Lucas => {
                let cached = if f == SeqFn::Fibonacci { self.fib.get(&n) } else { self.lucas.get(&n) };
                if let Some(v) = cached {
                    return Ok(v.clone());
                }
                let (fv, lv): (BigInt, BigInt) = crate::exactnum::fibonacci_lucas(n);
                let (fa, la) = (ArbReal::from_bigint(&fv, w), ArbReal::from_bigint(&lv, w));
                self.fib.insert(n, fa.clone());
                self.lucas.insert(n, la.clone());
                Ok(if f == SeqFn::Fibonacci { fa } else { la })
            }
        }
    }
}

pub(crate) fn constant(c: Constant, w: u32) -> ArbReal {
    match c {
        Constant::Pi => arbreal::pi(w),
        Constant::Sqrt5 => arbreal::sqrt5(w),
        Constant::Alpha => arbreal::alpha(w),
        Constant::Beta => arbreal::beta(w),
        Constant::LnAlpha => arbreal::ln_alpha(w),
        Constant::CatalanG => arbreal::catalan_g(w),
        Constant::Zeta3 => arbreal::zeta3(w),
        Constant::Omega => arbreal::omega(w),
    }
}

/// Value of `e` under `env`, correct to `digits` significant digits.
pub fn eval_numeric(e: &Expr, env: &Env, digits: u32) -> Result<ArbReal, ExprError> {
    Ok(NumericEvaluator::new(digits).eval(e, env)?.with_digits(digits))
}
