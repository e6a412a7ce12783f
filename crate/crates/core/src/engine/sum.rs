use num_rational::BigRational;
use num_traits::One;

use super::EngineError;
use crate::arbreal::{working_digits, ArbReal};
use crate::expr::{Env, NumericEvaluator};
use crate::seriesdsl::{SeriesSpec, TailStrategy};

pub const GEOMETRIC_TERM_CAP: u64 = 1_000_000;
pub const ALGEBRAIC_TERM_CAP: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: ArbReal,
    pub terms_used: u64,
    pub tail_bound: ArbReal,
    pub strategy: TailStrategy,
}

/// Sums `spec` under `env` to `digits` significant digits using the declared
/// tail strategy.
pub fn sum_series(spec: &SeriesSpec, env: &Env, tail: &TailStrategy, digits: u32) -> Result<SumResult, EngineError> {
    match tail {
        TailStrategy::Geometric { ratio, from } => geometric(spec, env, tail, ratio, *from, digits),
        TailStrategy::Algebraic { base, .. } => algebraic(spec, env, tail, &tail.full_ladder(), *base, digits),
    }
}

fn term(ev: &mut NumericEvaluator, spec: &SeriesSpec, env: &Env, n: i64) -> Result<ArbReal, EngineError> {
    let e = env.clone().with(&spec.index, n);
    ev.eval(&spec.term, &e).map_err(|err| EngineError::Eval { at_index: Some(n), source: err })
}

fn geometric(
    spec: &SeriesSpec,
    env: &Env,
    strategy: &TailStrategy,
    ratio: &BigRational,
    from: i64,
    digits: u32,
) -> Result<SumResult, EngineError> {
    let mut ev = NumericEvaluator::new(digits);
    let w = ev.working_digits();
    let rho = ArbReal::from_rational(ratio, w);
    let factor = ArbReal::from_rational(&(ratio / (BigRational::one() - ratio)), w);
    // slack absorbs rounding when the declared ratio is attained exactly
    let slack = &rho * &(&ArbReal::one(w) + &ArbReal::pow10(-(w as i64) / 2, w));
    let eps = ArbReal::pow10(-(digits as i64), w);
    let from = from.max(spec.start);
    let mut sum = ArbReal::zero(w);
    let mut prev: Option<ArbReal> = None;
    let mut n = spec.start;
    let mut count = 0u64;
    loop {
        if count >= GEOMETRIC_TERM_CAP {
            return Err(EngineError::TermCap { cap: GEOMETRIC_TERM_CAP });
        }
        let t = term(&mut ev, spec, env, n)?;
        count += 1;
        sum = &sum + &t;
        if n > from {
            let p = prev.as_ref().expect("previous term").abs();
            if t.abs() > &slack * &p {
                let r = if p.is_zero() { f64::INFINITY } else { t.abs().checked_div(&p).map(|q| q.to_f64()).unwrap_or(f64::INFINITY) };
                return Err(EngineError::TailBoundViolation { n, ratio: r, declared: ratio.to_string() });
            }
        }
        if n >= from && !t.is_zero() {
            let bound = &t.abs() * &factor;
            let scale = ArbReal::max_abs(&sum, &ArbReal::one(w));
            if bound < &eps * &scale {
                return Ok(SumResult {
                    value: sum.with_digits(digits),
                    terms_used: count,
                    tail_bound: bound.with_digits(digits.min(30)),
                    strategy: strategy.clone(),
                });
            }
        }
        prev = Some(t);
        n += 1;
    }
}

fn algebraic(
    spec: &SeriesSpec,
    env: &Env,
    strategy: &TailStrategy,
    ladder: &[BigRational],
    base: u64,
    digits: u32,
) -> Result<SumResult, EngineError> {
    let mut ev = NumericEvaluator::new(digits + 10);
    let w = working_digits(digits) + 10;
    // 2^e for each ladder exponent
    let two = ArbReal::from_i64(2, w);
    let factors: Vec<ArbReal> = ladder
        .iter()
        .map(|e| two.pow_rational(e.numer(), e.denom()).expect("power of two"))
        .collect();
    let denoms: Vec<ArbReal> = factors.iter().map(|c| &ArbReal::one(w) - c).collect();
    let stop = ArbReal::pow10(-(digits as i64) - 3, w);

    let mut rows: Vec<Vec<ArbReal>> = Vec::new();
    let mut sum = ArbReal::zero(w);
    let mut count = 0u64;
    let mut n = spec.start;
    let mut checkpoint = base;
    let mut last_gap: Option<ArbReal> = None;
    while checkpoint <= ALGEBRAIC_TERM_CAP {
        while count < checkpoint {
            sum = &sum + &term(&mut ev, spec, env, n)?;
            count += 1;
            n += 1;
        }
        let mut row = vec![sum.clone()];
        if let Some(prev) = rows.last() {
            let order = ladder.len().min(prev.len());
            for j in 0..order {
                let r = (&row[j] - &(&factors[j] * &prev[j])).checked_div(&denoms[j]).expect("nonzero");
                row.push(r);
            }
            let gap = (row.last().unwrap() - prev.last().unwrap()).abs();
            let est = row.last().unwrap().clone();
            let done = rows.len() >= 2 && gap < &stop * &ArbReal::max_abs(&est, &ArbReal::one(w));
            last_gap = Some(gap);
            rows.push(row);
            if done {
                break;
            }
        } else {
            rows.push(row);
        }
        checkpoint *= 2;
    }
    let best = rows.last().and_then(|r| r.last()).cloned().unwrap_or_else(|| ArbReal::zero(w));
    let tail_bound = match last_gap {
        Some(g) => g,
        None => return Err(EngineError::TermCap { cap: ALGEBRAIC_TERM_CAP }),
    };
    Ok(SumResult {
        value: best.with_digits(digits),
        terms_used: count,
        tail_bound: tail_bound.with_digits(digits.min(30)),
        strategy: strategy.clone(),
    })
}

