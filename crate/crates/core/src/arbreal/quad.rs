//! Double-exponential (tanh-sinh) quadrature on finite intervals.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{constants, ArbError, ArbReal};

pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;

/// Anything that can be sampled on the open integration interval.
pub trait Integrand {
    type Error: From<ArbError>;
    fn eval(&mut self, x: &ArbReal) -> Result<ArbReal, Self::Error>;
}

impl<E: From<ArbError>, F: FnMut(&ArbReal) -> Result<ArbReal, E>> Integrand for F {
    type Error = E;
    fn eval(&mut self, x: &ArbReal) -> Result<ArbReal, E> {
        self(x)
    }
}

#[derive(Clone, Debug)]
pub struct QuadOutcome {
    pub value: ArbReal,
    pub levels: u32,
    pub evaluations: u64,
    pub gap: ArbReal,
}

// Abscissa complement δ = 1 − tanh(π/2·sinh t) and weight at one node.
struct Node {
    t_gt_one: bool,
    delta: ArbReal,
    weight: ArbReal,
}

type NodeCache = RwLock<HashMap<(u32, u32), Arc<Vec<Node>>>>;

fn node_cache() -> &'static NodeCache {
    static C: OnceLock<NodeCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn t_max(digits: u32) -> f64 {
    let s_max = (digits as f64 + 5.0) * std::f64::consts::LN_10;
    (2.0 * s_max / std::f64::consts::PI).asinh()
}

fn make_node(k: i64, level: u32, w: u32) -> Node {
    let half_pi = constants::pi(w).mul_pow2(-1);
    let t = ArbReal::from_i64(k, w).mul_pow2(-(level as i64));
    let (sh, ch) = if k == 0 {
        (ArbReal::zero(w), ArbReal::one(w))
    } else {
        (t.sinh().expect("finite"), t.cosh().expect("finite"))
    };
    let s = &half_pi * &sh;
    let e = (-s.mul_pow2(1)).exp().expect("finite");
    let one = ArbReal::one(w);
    let ope = &one + &e;
    let delta = e.mul_pow2(1).checked_div(&ope).expect("positive");
    let weight = (&(&half_pi * &ch) * &e.mul_pow2(2)).checked_div(&ope.square()).expect("positive");
    Node { t_gt_one: t.to_f64() > 1.0, delta, weight }
}

fn nodes(digits: u32, level: u32) -> Arc<Vec<Node>> {
    if let Some(v) = node_cache().read().expect("node cache poisoned").get(&(digits, level)) {
        return v.clone();
    }
    let w = digits + 5;
    let tm = t_max(digits);
    let step = 0.5f64.powi(level as i32);
    let (first, stride) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut k = first;
    while k as f64 * step <= tm {
        out.push(make_node(k, level, w));
        k += stride;
    }
    let v = Arc::new(out);
    let mut c = node_cache().write().expect("node cache poisoned");
    c.entry((digits, level)).or_insert(v).clone()
}

/// Integrates `f` over `[a, b]` to `digits` significant digits (relative to
/// `max(1, |I|)`), refining the step until consecutive levels agree.
pub fn tanh_sinh<I: Integrand>(
    f: &mut I,
    a: &ArbReal,
    b: &ArbReal,
    digits: u32,
) -> Result<QuadOutcome, I::Error> {
    let w = digits + 5;
    if a == b {
        return Ok(QuadOutcome {
            value: ArbReal::zero(digits),
            levels: 0,
            evaluations: 0,
            gap: ArbReal::zero(digits),
        });
    }
    if a > b {
        let mut r = tanh_sinh(f, b, a, digits)?;
        r.value = -r.value;
        return Ok(r);
    }
    let a = a.with_digits(w);
    let b = b.with_digits(w);
    let half = (&b - &a).mul_pow2(-1);
    let tol = ArbReal::pow10(-(digits as i64), w);
    let tiny = ArbReal::pow10(-(w as i64), w);
    let mut raw = ArbReal::zero(w);
    let mut prev: Option<ArbReal> = None;
    let mut evaluations = 0u64;
    let mut gap = ArbReal::zero(w);
    for level in 0..=MAX_LEVEL {
        let ns = nodes(digits, level);
        let scale = {
            let p = prev.as_ref().map(|p| p.abs()).unwrap_or_else(|| ArbReal::zero(w));
            let one = ArbReal::one(w);
            ArbReal::max_abs(&p, &one)
        };
        let h = ArbReal::one(w).mul_pow2(-(level as i64));
        let mut quiet = 0;
        for node in ns.iter() {
            let off = &half * &node.delta;
            let mut contrib = ArbReal::zero(w);
            if node.delta == ArbReal::one(w) {
                let fx = f.eval(&(&a + &off))?;
                evaluations += 1;
                contrib = &fx * &node.weight;
            } else {
                let xl = &a + &off;
                if xl != a {
                    contrib = &contrib + &(&f.eval(&xl)? * &node.weight);
                    evaluations += 1;
                }
                let xr = &b - &off;
                if xr != b {
                    contrib = &contrib + &(&f.eval(&xr)? * &node.weight);
                    evaluations += 1;
                }
            }
            raw = &raw + &contrib;
            let mag = &(&contrib.abs() * &half) * &h;
            if node.t_gt_one && mag < &tiny * &scale {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let est = &(&raw * &half) * &h;
        if let Some(p) = &prev {
            gap = (&est - p).abs();
            let one = ArbReal::one(w);
            let bound = &tol * &ArbReal::max_abs(&est, &one);
            if level >= MIN_LEVEL && gap <= bound {
                return Ok(QuadOutcome {
                    value: est.with_digits(digits),
                    levels: level,
                    evaluations,
                    gap: gap.with_digits(digits),
                });
            }
        }
        prev = Some(est);
    }
    Err(ArbError::Convergence {
        levels: MAX_LEVEL,
        estimate: Box::new(prev.expect("at least one level").with_digits(digits)),
        gap: Box::new(gap.with_digits(digits)),
    }
    .into())
}
