//! Identity records, the registry text format and the shipped registry.

mod parser;
mod registry;

pub use parser::{parse_expression, ParseError};
pub use registry::{
    builtin_registry, builtin_sources, parse_registry, parse_registry_named, serialize_record, Diagnostic,
    Location, ParsedRegistry,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::expr::{Env, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Series,
    Finite,
    Algebraic,
    Radical,
    Integral,
    Constant,
}

impl Kind {
    pub const ALL: [Kind; 6] =
        [Kind::Series, Kind::Finite, Kind::Algebraic, Kind::Radical, Kind::Integral, Kind::Constant];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Series => "series",
            Kind::Finite => "finite",
            Kind::Algebraic => "algebraic",
            Kind::Radical => "radical",
            Kind::Integral => "integral",
            Kind::Constant => "constant",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub index: String,
    pub start: i64,
    pub term: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpec {
    pub index: String,
    pub lower: Expr,
    pub upper: Expr,
    pub summand: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lhs {
    Series(SeriesSpec),
    Finite(FiniteSpec),
    Expr(Expr),
}

/// Default number of terms in the first Richardson checkpoint.
pub const DEFAULT_RICHARDSON_BASE: u64 = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum TailStrategy {
    /// Terms eventually shrink at least by `ratio` per step, from index `from` on.
    Geometric { ratio: BigRational, from: i64 },
    /// Tail behaves like `Σ c_j N^{e_j}` over the exponent ladder.
    Algebraic { ladder: Vec<BigRational>, order: u32, base: u64 },
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid rational `{s}`");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl TailStrategy {
    /// Ladder extended arithmetically (by its last step, or −1) to `order` exponents.
    pub fn full_ladder(&self) -> Vec<BigRational> {
        match self {
            TailStrategy::Geometric { .. } => vec![],
            TailStrategy::Algebraic { ladder, order, .. } => {
                let mut l = ladder.clone();
                let step = if l.len() >= 2 {
                    &l[l.len() - 1] - &l[l.len() - 2]
                } else {
                    -BigRational::one()
                };
                while l.len() < *order as usize {
                    let next = l.last().expect("nonempty ladder") + &step;
                    l.push(next);
                }
                l.truncate((*order as usize).max(1));
                l
            }
        }
    }

    fn validate(&self) -> Result<(), String> {
        match self {
            TailStrategy::Geometric { ratio, .. } => {
                if !ratio.is_positive() || *ratio >= BigRational::one() {
                    return Err(format!("geometric ratio {} must lie in (0, 1)", fmt_rational(ratio)));
                }
            }
            TailStrategy::Algebraic { ladder, order, base } => {
                if ladder.is_empty() {
                    return Err("algebraic ladder is empty".into());
                }
                if ladder.windows(2).any(|w| w[1] >= w[0]) {
                    return Err("algebraic ladder must be strictly decreasing".into());
                }
                if !ladder[0].is_negative() {
                    return Err("algebraic ladder exponents must be negative".into());
                }
                if *order == 0 {
                    return Err("richardson order must be at least 1".into());
                }
                if *base < 2 || base % 2 == 1 {
                    return Err("richardson base must be even".into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TailStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailStrategy::Geometric { ratio, from } => {
                write!(f, "geometric ratio={} from={from}", fmt_rational(ratio))
            }
            TailStrategy::Algebraic { ladder, order, base } => {
                let l: Vec<String> = ladder.iter().map(fmt_rational).collect();
                write!(f, "algebraic ladder={} order={order}", l.join(","))?;
                if *base != DEFAULT_RICHARDSON_BASE {
                    write!(f, " base={base}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for TailStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let mode = words.next().ok_or("empty tail strategy")?;
        let mut kv = std::collections::BTreeMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| format!("expected key=value in tail, got `{w}`"))?;
            if kv.insert(k, v).is_some() {
                return Err(format!("duplicate tail key `{k}`"));
            }
        }
        let int = |k: &str, v: &str| v.parse::<i64>().map_err(|_| format!("invalid integer for `{k}`: `{v}`"));
        let t = match mode {
            "geometric" => {
                let mut ratio = None;
                let mut from = 0;
                for (k, v) in kv {
                    match k {
                        "ratio" => ratio = Some(parse_rational(v)?),
                        "from" => from = int(k, v)?,
                        _ => return Err(format!("unknown geometric tail key `{k}`")),
                    }
                }
                TailStrategy::Geometric { ratio: ratio.ok_or("geometric tail needs ratio=")?, from }
            }
            "algebraic" => {
                let mut ladder = None;
                let mut order = None;
                let mut base = DEFAULT_RICHARDSON_BASE;
                for (k, v) in kv {
                    match k {
                        "ladder" => ladder = Some(v.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?),
                        "order" => order = Some(int(k, v)?.try_into().map_err(|_| "order out of range")?),
                        "base" => base = int(k, v)?.try_into().map_err(|_| "base out of range")?,
                        _ => return Err(format!("unknown algebraic tail key `{k}`")),
                    }
                }
                let ladder = ladder.ok_or("algebraic tail needs ladder=")?;
                let order = order.unwrap_or(ladder.len() as u32);
                TailStrategy::Algebraic { ladder, order, base }
            }
            other => return Err(format!("unknown tail mode `{other}`")),
        };
        t.validate()?;
        Ok(t)
    }
}

/// Integer range `lo..=hi` for a named parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamRange {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl ParamRange {
    pub fn new(name: &str, lo: i64, hi: i64) -> Self {
        ParamRange { name: name.to_string(), lo, hi }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// `name=a..b` or `name=v`.
    pub fn parse_one(s: &str) -> Result<Self, String> {
        let (name, range) = s.split_once('=').ok_or_else(|| format!("expected name=a..b, got `{s}`"))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("invalid parameter name `{name}`"));
        }
        let int = |v: &str| v.trim().parse::<i64>().map_err(|_| format!("invalid integer `{}`", v.trim()));
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (int(a)?, int(b)?),
            None => {
                let v = int(range)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range for `{name}`: {lo} > {hi}"));
        }
        Ok(ParamRange::new(name, lo, hi))
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>, String> {
        let mut out: Vec<ParamRange> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p = Self::parse_one(part)?;
            if out.iter().any(|q| q.name == p.name) {
                return Err(format!("parameter `{}` declared twice", p.name));
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn format_list(ps: &[ParamRange]) -> String {
        ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}={}", self.name, self.lo)
        } else {
            write!(f, "{}={}..{}", self.name, self.lo, self.hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub kind: Kind,
    pub lhs: Lhs,
    pub rhs: Expr,
    pub params: Vec<ParamRange>,
    pub tail: Option<TailStrategy>,
    pub paper_ref: String,
    pub as_printed: bool,
    pub note: String,
    /// Explicit target precision overriding the per-class default.
    pub digits: Option<u32>,
}

impl IdentityRecord {
    /// Every binding in the cartesian product of the parameter ranges, in
    /// lexicographic order of the declared parameters.
    pub fn bindings(&self) -> Vec<Env> {
        bindings_of(&self.params)
    }
}

/// Cartesian product of the given ranges.
pub fn bindings_of(params: &[ParamRange]) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for p in params {
        let mut next = Vec::with_capacity(out.len() * (p.hi - p.lo + 1) as usize);
        for env in &out {
            for v in p.values() {
                next.push(env.clone().with(&p.name, v));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests;
