//! Summation, exact checks and identity verification.

mod checks;
pub mod report;
mod sum;

pub use checks::{
    algebraic_check, finite_check, finite_check_with, radical_check, square_exact, ExactOutcome, RadicalOutcome,
};
pub use report::{Digits, Status, Summary, VerificationReport, VerificationResult};
pub use sum::{sum_series, SumResult, ALGEBRAIC_TERM_CAP, GEOMETRIC_TERM_CAP};

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::arbreal::ArbReal;
use crate::exactnum::QuadRat;
use crate::expr::{eval_numeric, Env, ExactEvaluator, ExprError};
use crate::seriesdsl::{bindings_of, IdentityRecord, Kind, Lhs, ParamRange, TailStrategy};

/// Precision of the sign comparison in radical checks.
pub const RADICAL_SIGN_DIGITS: u32 = 20;
/// Precision of the quadrature side of integral records.
pub const INTEGRAL_DIGITS: u32 = 30;

#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("tail bound violated at n={n}: observed ratio {ratio:.6} exceeds declared {declared}")]
    TailBoundViolation { n: i64, ratio: f64, declared: String },
    #[error("term cap of {cap} exceeded without convergence")]
    TermCap { cap: u64 },
    #[error("{}{source}", at_index.map(|n| format!("at index {n}: ")).unwrap_or_default())]
    Eval {
        at_index: Option<i64>,
        #[source]
        source: ExprError,
    },
    #[error("unsupported record: {0}")]
    Unsupported(String),
}

impl EngineError {
    /// Failure to converge (term caps, quadrature levels), as opposed to a
    /// malformed or out-of-domain record.
    pub fn is_convergence(&self) -> bool {
        match self {
            EngineError::TermCap { .. } => true,
            EngineError::Eval { source, .. } => source.is_convergence(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    /// Overrides every numeric target precision.
    pub digits: Option<u32>,
    /// Parameter subranges, intersected with each record's declared range.
    pub params: Vec<ParamRange>,
}

/// Numeric target for a record, or `None` when it is checked exactly.
pub fn target_digits(record: &IdentityRecord, config: &VerifyConfig) -> Option<u32> {
    let default = match (record.kind, &record.lhs, &record.tail) {
        (Kind::Finite | Kind::Algebraic | Kind::Radical, ..) => return None,
        (_, Lhs::Series(_), Some(TailStrategy::Algebraic { .. })) => 10,
        (Kind::Series, ..) => 50,
        (Kind::Integral, ..) => INTEGRAL_DIGITS,
        (Kind::Constant, ..) => 50,
    };
    Some(config.digits.or(record.digits).unwrap_or(default))
}

/// Bindings for `record` after intersecting with the override ranges.
pub fn effective_bindings(record: &IdentityRecord, overrides: &[ParamRange]) -> Vec<Env> {
    let mut ranges = Vec::with_capacity(record.params.len());
    for p in &record.params {
        let mut r = p.clone();
        if let Some(o) = overrides.iter().find(|o| o.name == p.name) {
            r.lo = r.lo.max(o.lo);
            r.hi = r.hi.min(o.hi);
            if r.lo > r.hi {
                return vec![];
            }
        }
        ranges.push(r);
    }
    bindings_of(&ranges)
}

fn magnitude_digits(v: &ArbReal) -> u32 {
    if v.is_zero() {
        0
    } else {
        v.log10_abs().ceil().max(0.0) as u32
    }
}

fn achieved(diff: &ArbReal, extra: Option<&ArbReal>, cap: u32) -> i64 {
    let worst = match extra {
        Some(t) => ArbReal::max_abs(diff, t),
        None => diff.abs(),
    };
    if worst.is_zero() {
        return cap as i64;
    }
    ((-worst.log10_abs()).floor() as i64).min(cap as i64)
}

struct Numeric {
    lhs: ArbReal,
    rhs: ArbReal,
    abs_diff: ArbReal,
    tail: Option<ArbReal>,
    terms: u64,
    work: u32,
}

fn numeric_sides(record: &IdentityRecord, env: &Env, target: u32) -> Result<Numeric, EngineError> {
    let eval_err = |source| EngineError::Eval { at_index: None, source };
    let rhs_digits = if record.kind == Kind::Integral { target.max(INTEGRAL_DIGITS) } else { target };
    let probe = eval_numeric(&record.rhs, env, 12).map_err(eval_err)?;
    let mag = magnitude_digits(&probe);
    let p = target + mag + 2;
    let rhs = eval_numeric(&record.rhs, env, rhs_digits + mag + 2).map_err(eval_err)?;
    match &record.lhs {
        Lhs::Series(spec) => {
            let tail = record.tail.as_ref().ok_or_else(|| EngineError::Unsupported("series without tail".into()))?;
            let s = sum_series(spec, env, tail, p)?;
            let abs_diff = (&s.value - &rhs).abs();
            Ok(Numeric { lhs: s.value, rhs, abs_diff, tail: Some(s.tail_bound), terms: s.terms_used, work: p })
        }
        Lhs::Expr(e) => {
            let lhs = eval_numeric(e, env, p.max(rhs_digits + mag + 2)).map_err(eval_err)?;
            let abs_diff = (&lhs - &rhs).abs();
            Ok(Numeric { lhs, rhs, abs_diff, tail: None, terms: 0, work: p })
        }
        Lhs::Finite(_) => Err(EngineError::Unsupported("finite sum in a numeric record".into())),
    }
}

fn quad_diff(a: &QuadRat, b: &QuadRat) -> ArbReal {
    let d = a - b;
    let w = RADICAL_SIGN_DIGITS + 10;
    (&ArbReal::from_rational(&d.a, w) + &(&ArbReal::from_rational(&d.b, w) * &crate::arbreal::sqrt5(w))).abs()
}

fn base_result(record: &IdentityRecord, env: &Env) -> VerificationResult {
    VerificationResult {
        id: record.id.clone(),
        binding: env.clone(),
        kind: record.kind,
        status: Status::Error,
        abs_diff: None,
        digits_requested: None,
        digits_achieved: None,
        terms_used: 0,
        elapsed: Duration::ZERO,
        as_printed: record.as_printed,
        message: None,
        convergence_failure: false,
    }
}

fn fill_error(r: &mut VerificationResult, err: EngineError) {
    r.status = Status::Error;
    r.convergence_failure = err.is_convergence();
    r.message = Some(err.to_string());
}

fn verify_one(record: &IdentityRecord, env: &Env, config: &VerifyConfig, exact: &mut ExactEvaluator) -> VerificationResult {
    let start = Instant::now();
    let mut r = base_result(record, env);
    r.digits_requested = target_digits(record, config);
    match record.kind {
        Kind::Finite => match finite_check_with(exact, record, env) {
            Ok(o) => {
                let diff = &o.lhs - &o.rhs;
                r.abs_diff = Some(ArbReal::from_rational(&diff, 20).abs());
                r.status = if o.equal { Status::Pass } else { Status::Fail };
                r.digits_achieved = o.equal.then_some(Digits::Exact);
            }
            Err(e) => fill_error(&mut r, e),
        },
        Kind::Algebraic => match algebraic_check(record, env) {
            Ok(o) => {
                r.abs_diff = Some(quad_diff(&o.lhs, &o.rhs));
                r.status = if o.equal { Status::Pass } else { Status::Fail };
                r.digits_achieved = o.equal.then_some(Digits::Exact);
            }
            Err(EngineError::Eval { source: ExprError::NotRepresentable(_), .. }) => radical(record, env, &mut r),
            Err(e) => fill_error(&mut r, e),
        },
        Kind::Radical => radical(record, env, &mut r),
        Kind::Series | Kind::Integral | Kind::Constant => {
            let target = r.digits_requested.expect("numeric kinds have a target");
            match numeric_sides(record, env, target) {
                Ok(n) => {
                    r.status = if n.abs_diff.below_pow10(target as i64) { Status::Pass } else { Status::Fail };
                    r.digits_achieved = Some(Digits::Value(achieved(&n.abs_diff, n.tail.as_ref(), n.work)));
                    r.abs_diff = Some(n.abs_diff.with_digits(20));
                    r.terms_used = n.terms;
                }
                Err(e) => fill_error(&mut r, e),
            }
        }
    }
    r.elapsed = start.elapsed();
    r
}

fn radical(record: &IdentityRecord, env: &Env, r: &mut VerificationResult) {
    match radical_check(record, env, RADICAL_SIGN_DIGITS) {
        Ok(o) => {
            let diff = (&o.lhs_value - &o.rhs_value).abs();
            r.status = if o.passed() { Status::Pass } else { Status::Fail };
            r.digits_achieved = o.passed().then_some(Digits::Exact);
            if !o.signs_agree {
                r.message = Some("squares agree but signs differ".into());
            } else if !o.squares_equal {
                r.message = Some(format!("squares differ: {} vs {}", o.lhs_square, o.rhs_square));
            }
            r.abs_diff = Some(if o.passed() { ArbReal::zero(RADICAL_SIGN_DIGITS) } else { diff });
        }
        Err(e) => fill_error(r, e),
    }
}

/// Both sides of a record at one binding, as printed by `eval`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub lhs: ArbReal,
    pub rhs: ArbReal,
    pub abs_diff: ArbReal,
    pub terms_used: u64,
    /// Precision the sides were computed to.
    pub digits: u32,
}

/// Computes both sides of `record` at `env`. Exact kinds are evaluated
/// exactly where possible and rounded to `digits` (default 50).
pub fn evaluate(record: &IdentityRecord, env: &Env, config: &VerifyConfig) -> Result<Evaluation, EngineError> {
    let eval_err = |source| EngineError::Eval { at_index: None, source };
    match target_digits(record, config) {
        Some(d) => {
            let n = numeric_sides(record, env, d)?;
            Ok(Evaluation {
                lhs: n.lhs.with_digits(d),
                rhs: n.rhs.with_digits(d),
                abs_diff: n.abs_diff.with_digits(20),
                terms_used: n.terms,
                digits: d,
            })
        }
        None => {
            let d = config.digits.unwrap_or(50);
            let (lhs, rhs, terms) = match &record.lhs {
                Lhs::Finite(spec) => {
                    let o = finite_check(record, env)?;
                    let terms = effective_terms(spec, env);
                    (ArbReal::from_rational(&o.lhs, d), ArbReal::from_rational(&o.rhs, d), terms)
                }
                Lhs::Expr(e) => (
                    eval_numeric(e, env, d).map_err(eval_err)?,
                    eval_numeric(&record.rhs, env, d).map_err(eval_err)?,
                    0,
                ),
                Lhs::Series(_) => return Err(EngineError::Unsupported("series in an exact record".into())),
            };
            let abs_diff = (&lhs - &rhs).abs().with_digits(20);
            Ok(Evaluation { lhs, rhs, abs_diff, terms_used: terms, digits: d })
        }
    }
}

fn effective_terms(spec: &crate::seriesdsl::FiniteSpec, env: &Env) -> u64 {
    let bound = |e| eval_numeric(e, env, 20).ok().and_then(|v| v.round_to_bigint().to_string().parse::<i64>().ok());
    match (bound(&spec.lower), bound(&spec.upper)) {
        (Some(lo), Some(hi)) if hi >= lo => (hi - lo + 1) as u64,
        _ => 0,
    }
}

/// One result per binding of `record`.
pub fn verify_identity(record: &IdentityRecord, config: &VerifyConfig) -> Vec<VerificationResult> {
    let mut exact = ExactEvaluator::new();
    effective_bindings(record, &config.params).iter().map(|env| verify_one(record, env, config, &mut exact)).collect()
}

/// Verifies every record in parallel; results are ordered by (id, binding).
pub fn verify_all(records: &[IdentityRecord], config: &VerifyConfig) -> VerificationReport {
    let jobs: Vec<(&IdentityRecord, Vec<Env>)> = records
        .iter()
        .flat_map(|r| {
            let bindings = effective_bindings(r, &config.params);
            if r.kind == Kind::Finite {
                vec![(r, bindings)]
            } else {
                bindings.into_iter().map(|b| (r, vec![b])).collect()
            }
        })
        .collect();
    let mut results: Vec<VerificationResult> = jobs
        .par_iter()
        .flat_map_iter(|(rec, envs)| {
            let mut exact = ExactEvaluator::new();
            envs.iter().map(|e| verify_one(rec, e, config, &mut exact)).collect::<Vec<_>>()
        })
        .collect();
    results.sort_by(|a, b| (&a.id, &a.binding).cmp(&(&b.id, &b.binding)));
    VerificationReport::new(results)
}

/// Record filter used by the command line.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub id_glob: Option<glob::Pattern>,
    pub kind: Option<Kind>,
    pub include_printed: bool,
}

impl Selection {
    pub fn matches(&self, r: &IdentityRecord) -> bool {
        if let Some(k) = self.kind {
            if r.kind != k {
                return false;
            }
        }
        if let Some(g) = &self.id_glob {
            if !g.matches(&r.id) {
                return false;
            }
        }
        if r.as_printed {
            let asked = self.id_glob.as_ref().is_some_and(|g| g.as_str().contains("printed"));
            return self.include_printed || asked;
        }
        true
    }

    pub fn apply(&self, records: &[IdentityRecord]) -> Vec<IdentityRecord> {
        records.iter().filter(|r| self.matches(r)).cloned().collect()
    }
}
