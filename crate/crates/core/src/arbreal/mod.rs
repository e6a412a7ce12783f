//! Arbitrary-precision binary floating point with a decimal precision target.
//!
//! A value is `mant · 2^exp`; `digits` is the number of significant decimal
//! digits the value is meant to carry. Arithmetic results carry the larger
//! precision of their operands and are rounded to nearest.

mod clausen;
mod constants;
mod elementary;
mod quad;

pub use clausen::clausen2;
pub use constants::{
    alpha, beta, catalan_g, catalan_g_clausen, ln2, ln_alpha, ln_alpha_asinh, omega, pi, pi_agm,
    sqrt5, zeta3, zeta3_euler_maclaurin,
};
pub use quad::{tanh_sinh, Integrand, QuadOutcome, MAX_LEVEL};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Clone, Error)]
pub enum ArbError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadrature did not converge after {levels} levels: estimate {estimate}, last gap {gap}")]
    Convergence { levels: u32, estimate: Box<ArbReal>, gap: Box<ArbReal> },
}

/// Guard digits added on top of a requested precision `d`.
pub fn guard_digits(d: u32) -> u32 {
    10 + d.div_ceil(10)
}

/// Working precision for a computation that must deliver `d` digits.
pub fn working_digits(d: u32) -> u32 {
    d + guard_digits(d)
}

pub(crate) fn bits_for(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 4
}

#[derive(Clone, Debug)]
pub struct ArbReal {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

impl ArbReal {
    fn make(mant: BigInt, exp: i64, digits: u32) -> Self {
        let prec = bits_for(digits);
        let len = mant.bits();
        if len <= prec {
            return ArbReal { mant, exp, digits };
        }
        let shift = len - prec;
        let (sign, mag) = mant.into_parts();
        let rounded = ((mag >> (shift - 1)) + 1u32) >> 1;
        ArbReal { mant: BigInt::from_biguint(sign, rounded), exp: exp + shift as i64, digits }
    }

    pub fn zero(digits: u32) -> Self {
        ArbReal { mant: BigInt::zero(), exp: 0, digits }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(n: i64, digits: u32) -> Self {
        Self::make(BigInt::from(n), 0, digits)
    }

    pub fn from_bigint(n: &BigInt, digits: u32) -> Self {
        Self::make(n.clone(), 0, digits)
    }

    pub fn from_rational(r: &BigRational, digits: u32) -> Self {
        let (n, d) = (r.numer(), r.denom());
        if n.is_zero() {
            return Self::zero(digits);
        }
        let shift = (bits_for(digits) as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0);
        let q = (n << shift as usize) / d;
        Self::make(q, -shift, digits)
    }

    /// Parses `[-]digits[.digits][e[-]digits]`.
    pub fn parse_decimal(s: &str, digits: u32) -> Option<Self> {
        let s = s.trim();
        let (body, e10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, body),
        };
        let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let all = format!("{ip}{fp}");
        let mut n: BigInt = all.parse().ok()?;
        if neg {
            n = -n;
        }
        let scale = e10 - fp.len() as i64;
        let ten = BigInt::from(10);
        let r = if scale >= 0 {
            BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
        };
        Some(Self::from_rational(&r, digits))
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Same value carried at precision `d` (rounded when `d` is lower).
    pub fn with_digits(&self, d: u32) -> Self {
        Self::make(self.mant.clone(), self.exp, d)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ArbReal { mant: self.mant.abs(), exp: self.exp, digits: self.digits }
    }

    /// `floor(log2 |x|)`, `None` for zero.
    pub fn mag2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        ArbReal { mant: self.mant.clone(), exp: self.exp + k, digits: self.digits }
    }

    fn top(&self) -> (f64, i64) {
        let len = self.mant.bits() as i64;
        let sh = (len - 60).max(0);
        let m = (&self.mant >> sh as usize).to_f64().unwrap_or(0.0);
        (m, self.exp + sh)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (m, e) = self.top();
        if e > 1100 {
            return m.signum() * f64::INFINITY;
        }
        if e < -1200 {
            return 0.0;
        }
        m * (e as f64).exp2()
    }

    /// Estimate of `log10 |x|` (−∞ for zero).
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.top();
        (m.abs().log2() + e as f64) / LOG2_10
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let sh = (-self.exp) as usize;
        let (sign, mag) = self.mant.clone().into_parts();
        let r = ((mag >> (sh - 1)) + 1u32) >> 1;
        BigInt::from_biguint(sign, r)
    }

    /// Exact rational value of the stored binary number.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// `10^k` at precision `digits`.
    pub fn pow10(k: i64, digits: u32) -> Self {
        let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_bigint(&p, digits)
        } else {
            Self::from_rational(&BigRational::new(BigInt::one(), p), digits)
        }
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let d = self.digits.max(other.digits);
        let om = if negate_other { -&other.mant } else { other.mant.clone() };
        if other.is_zero() {
            return Self::make(self.mant.clone(), self.exp, d);
        }
        if self.is_zero() {
            return Self::make(om, other.exp, d);
        }
        let prec = bits_for(d) as i64;
        let ta = self.exp + self.mant.bits() as i64;
        let tb = other.exp + other.mant.bits() as i64;
        if ta > tb + prec + 3 {
            return Self::make(self.mant.clone(), self.exp, d);
        }
        if tb > ta + prec + 3 {
            return Self::make(om, other.exp, d);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as usize;
        let mb = om << (other.exp - e) as usize;
        Self::make(ma + mb, e, d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArbError> {
        if other.is_zero() {
            return Err(ArbError::DivisionByZero);
        }
        let d = self.digits.max(other.digits);
        if self.is_zero() {
            return Ok(Self::zero(d));
        }
        let shift =
            (bits_for(d) as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << shift as usize) / &other.mant;
        Ok(Self::make(q, self.exp - other.exp - shift, d))
    }

    pub fn recip(&self) -> Result<Self, ArbError> {
        Self::one(self.digits).checked_div(self)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self::make(&self.mant * k, self.exp, self.digits)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero integer");
        self.checked_div(&Self::from_i64(k, self.digits)).expect("nonzero divisor")
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power; negative exponents take the reciprocal.
    pub fn powi(&self, n: i64) -> Result<Self, ArbError> {
        let d = self.digits;
        if n == 0 {
            return Ok(Self::one(d));
        }
        if self.is_zero() {
            return if n < 0 { Err(ArbError::DivisionByZero) } else { Ok(Self::zero(d)) };
        }
        let guard = 2 + (64 - n.unsigned_abs().leading_zeros()) / 3;
        let mut base = self.with_digits(d + guard);
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(d + guard);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        let r = if n < 0 { acc.recip()? } else { acc };
        Ok(r.with_digits(d))
    }

    pub fn sqrt(&self) -> Result<Self, ArbError> {
        self.nth_root(2)
    }

    /// Real `n`-th root; negative radicands need odd `n`.
    pub fn nth_root(&self, n: u32) -> Result<Self, ArbError> {
        if n == 0 {
            return Err(ArbError::Domain("zeroth root".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.signum() < 0 {
            if n % 2 == 0 {
                return Err(ArbError::Domain("even root of a negative number".into()));
            }
            return Ok(-&self.abs().nth_root(n)?);
        }
        let d = self.digits;
        let want = (bits_for(d) as i64 + 4) * n as i64;
        let mut shift = (want - self.mant.bits() as i64).max(0);
        shift += (self.exp - shift).rem_euclid(n as i64);
        let m = &self.mant << shift as usize;
        let r = m.nth_root(n);
        let e = (self.exp - shift).div_euclid(n as i64);
        Ok(Self::make(r, e, d))
    }

    /// Rational power `p/q` for `q > 0`.
    pub fn pow_rational(&self, p: &BigInt, q: &BigInt) -> Result<Self, ArbError> {
        let q = q.to_u32().ok_or_else(|| ArbError::Domain("root index too large".into()))?;
        let p = p.to_i64().ok_or_else(|| ArbError::Domain("exponent too large".into()))?;
        if q == 1 {
            return self.powi(p);
        }
        if self.signum() < 0 && q % 2 == 0 {
            return Err(ArbError::Domain("even root of a negative number".into()));
        }
        let d = self.digits;
        let w = self.with_digits(d + 4);
        w.nth_root(q)?.powi(p).map(|v| v.with_digits(d))
    }

    /// Decimal rendering `(negative, significant digits, exponent)` with
    /// value `±0.d₁d₂… × 10^(exponent+1)`, i.e. `d₁.d₂… × 10^exponent`.
    pub fn to_decimal_parts(&self, sig: usize) -> (bool, String, i64) {
        let sig = sig.max(1);
        if self.is_zero() {
            return (false, "0".repeat(sig), 0);
        }
        let neg = self.signum() < 0;
        let mag = self.mant.abs();
        let mut e10 = self.log10_abs().floor() as i64;
        let ten = BigInt::from(10);
        let lo = num_traits::pow(ten.clone(), sig - 1);
        let hi = &lo * 10;
        for _ in 0..4 {
            let k = sig as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigInt::one();
            if k >= 0 {
                num *= num_traits::pow(ten.clone(), k as usize);
            } else {
                den *= num_traits::pow(ten.clone(), (-k) as usize);
            }
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            let (q, r) = num.div_rem(&den);
            let n = if r * 2 >= den { q + 1 } else { q };
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                return (neg, n.to_string(), e10);
            }
        }
        unreachable!("decimal exponent estimate off by more than two")
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.2345e-7`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let (neg, ds, e) = self.to_decimal_parts(sig);
        let sign = if neg { "-" } else { "" };
        let (h, t) = ds.split_at(1);
        if t.is_empty() {
            format!("{sign}{h}e{e}")
        } else {
            format!("{sign}{h}.{t}e{e}")
        }
    }

    /// Plain positional notation for moderate exponents, scientific otherwise.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (neg, ds, e) = self.to_decimal_parts(sig);
        if !(-8..=24).contains(&e) {
            return self.to_sci_string(sig);
        }
        let sign = if neg { "-" } else { "" };
        let s = if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        } else if (e as usize) + 1 >= ds.len() {
            format!("{}{}", ds, "0".repeat(e as usize + 1 - ds.len()))
        } else {
            let (a, b) = ds.split_at(e as usize + 1);
            format!("{a}.{b}")
        };
        format!("{sign}{s}")
    }

    /// Exact comparison of the stored values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let ta = self.exp + self.mant.bits() as i64;
        let tb = other.exp + other.mant.bits() as i64;
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let ma = self.mant.abs() << (self.exp - e) as usize;
            let mb = other.mant.abs() << (other.exp - e) as usize;
            ma.cmp(&mb)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    /// `|self| < 10^-d`.
    pub fn below_pow10(&self, d: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        let est = self.log10_abs();
        if est < -(d as f64) - 0.5 {
            return true;
        }
        if est > -(d as f64) + 0.5 {
            return false;
        }
        let t = Self::pow10(-d, (d.unsigned_abs() as u32).max(self.digits) + 10);
        self.abs().cmp_value(&t) == Ordering::Less
    }

    pub fn max_abs(a: &Self, b: &Self) -> Self {
        if a.abs().cmp_value(&b.abs()) == Ordering::Less {
            b.abs()
        } else {
            a.abs()
        }
    }
}

impl PartialEq for ArbReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for ArbReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Add for &ArbReal {
    type Output = ArbReal;
    fn add(self, rhs: &ArbReal) -> ArbReal {
        self.add_impl(rhs, false)
    }
}

impl Sub for &ArbReal {
    type Output = ArbReal;
    fn sub(self, rhs: &ArbReal) -> ArbReal {
        self.add_impl(rhs, true)
    }
}

impl Mul for &ArbReal {
    type Output = ArbReal;
    fn mul(self, rhs: &ArbReal) -> ArbReal {
        ArbReal::make(&self.mant * &rhs.mant, self.exp + rhs.exp, self.digits.max(rhs.digits))
    }
}

impl Neg for &ArbReal {
    type Output = ArbReal;
    fn neg(self) -> ArbReal {
        ArbReal { mant: -&self.mant, exp: self.exp, digits: self.digits }
    }
}

impl Neg for ArbReal {
    type Output = ArbReal;
    fn neg(self) -> ArbReal {
        ArbReal { mant: -self.mant, exp: self.exp, digits: self.digits }
    }
}

impl Add for ArbReal {
    type Output = ArbReal;
    fn add(self, rhs: ArbReal) -> ArbReal {
        &self + &rhs
    }
}

impl Sub for ArbReal {
    type Output = ArbReal;
    fn sub(self, rhs: ArbReal) -> ArbReal {
        &self - &rhs
    }
}

impl Mul for ArbReal {
    type Output = ArbReal;
    fn mul(self, rhs: ArbReal) -> ArbReal {
        &self * &rhs
    }
}

impl fmt::Display for ArbReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.digits as usize);
        f.write_str(&self.to_sci_string(sig))
    }
}

#[cfg(test)]
mod tests;
