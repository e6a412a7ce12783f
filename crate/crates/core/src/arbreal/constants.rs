//! Mathematical constants, each with a primary and an independent check route.
//! Values are cached per (constant, digits) and never recomputed.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bits_for, clausen2, ArbReal};
use crate::exactnum::bernoulli;

type Cache = RwLock<HashMap<(&'static str, u32), ArbReal>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(name: &'static str, digits: u32, compute: impl FnOnce() -> ArbReal) -> ArbReal {
    if let Some(v) = cache().read().expect("constant cache poisoned").get(&(name, digits)) {
        return v.clone();
    }
    let v = compute().with_digits(digits);
    let mut w = cache().write().expect("constant cache poisoned");
    w.entry((name, digits)).or_insert(v).clone()
}

// Fixed-point helpers: integers scaled by 2^bits.
fn fixed_to_arb(x: BigInt, bits: u64, digits: u32) -> ArbReal {
    ArbReal::make(x, -(bits as i64), digits)
}

fn fixed_bits(digits: u32) -> u64 {
    bits_for(digits) + 16
}

/// `arccot(m) = Σ (-1)^j / ((2j+1) m^(2j+1))` in fixed point.
fn arccot_fixed(m: u64, bits: u64) -> BigInt {
    let m2 = BigInt::from(m * m);
    let mut pow = (BigInt::one() << bits as usize) / m;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !pow.is_zero() {
        let t = &pow / (2 * j + 1);
        if j % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pow /= &m2;
        j += 1;
    }
    sum
}

/// π by Machin's formula.
pub fn pi(digits: u32) -> ArbReal {
    cached("pi", digits, || {
        let b = fixed_bits(digits);
        let v = (arccot_fixed(5, b) * 4 - arccot_fixed(239, b)) * 4;
        fixed_to_arb(v, b, digits)
    })
}

/// π by the Gauss-Legendre AGM iteration.
pub fn pi_agm(digits: u32) -> ArbReal {
    cached("pi_agm", digits, || {
        let w = digits + 10;
        let one = ArbReal::one(w);
        let mut a = one.clone();
        let mut b = one.mul_pow2(-1).sqrt().expect("positive");
        let mut t = one.mul_pow2(-2);
        let mut p = 0i64;
        loop {
            let an = (&a + &b).mul_pow2(-1);
            let bn = (&a * &b).sqrt().expect("positive");
            let da = &a - &an;
            t = &t - &da.square().mul_pow2(p);
            a = an;
            b = bn;
            p += 1;
            if (&a - &b).below_pow10(w as i64) {
                break;
            }
        }
        (&a + &b).square().checked_div(&t.mul_pow2(2)).expect("nonzero")
    })
}

/// ln 2 = 2·atanh(1/3).
pub fn ln2(digits: u32) -> ArbReal {
    cached("ln2", digits, || {
        let b = fixed_bits(digits);
        let mut pow: BigInt = (BigInt::one() << b as usize) / 3;
        let mut sum = BigInt::zero();
        let mut j = 0u64;
        while !pow.is_zero() {
            sum += &pow / (2 * j + 1);
            pow /= 9;
            j += 1;
        }
        fixed_to_arb(sum * 2, b, digits)
    })
}

pub fn sqrt5(digits: u32) -> ArbReal {
    cached("sqrt5", digits, || ArbReal::from_i64(5, digits + 4).sqrt().expect("positive"))
}

/// Golden ratio `(1 + √5)/2`.
pub fn alpha(digits: u32) -> ArbReal {
    cached("alpha", digits, || (&ArbReal::one(digits + 4) + &sqrt5(digits + 4)).mul_pow2(-1))
}

/// `(1 − √5)/2`.
pub fn beta(digits: u32) -> ArbReal {
    cached("beta", digits, || (&ArbReal::one(digits + 4) - &sqrt5(digits + 4)).mul_pow2(-1))
}

/// `√(√5·α)`.
pub fn omega(digits: u32) -> ArbReal {
    cached("omega", digits, || {
        let w = digits + 4;
        (&sqrt5(w) * &alpha(w)).sqrt().expect("positive")
    })
}

/// ln α through the logarithm.
pub fn ln_alpha(digits: u32) -> ArbReal {
    cached("ln_alpha", digits, || alpha(digits + 4).ln().expect("positive"))
}

/// ln α as arcsinh(1/2) = Σ (-1)^n binom(2n,n) / (4^n (2n+1) 2^(2n+1)).
pub fn ln_alpha_asinh(digits: u32) -> ArbReal {
    cached("ln_alpha_asinh", digits, || {
        let b = fixed_bits(digits);
        let mut a = BigInt::one() << (b as usize - 1);
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !a.is_zero() {
            let t = &a / (2 * n + 1);
            if n % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            n += 1;
            a = a * (2 * n - 1) / (2 * n) / 4;
        }
        fixed_to_arb(sum, b, digits)
    })
}

/// Catalan's constant via
/// `G = (π/8) ln(2+√3) + (3/8) Σ 1/((2n+1)² binom(2n,n))`.
pub fn catalan_g(digits: u32) -> ArbReal {
    cached("catalan_g", digits, || {
        let w = digits + 6;
        let b = fixed_bits(w);
        let mut inv_binom = BigInt::one() << b as usize;
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !inv_binom.is_zero() {
            sum += &inv_binom / ((2 * n + 1) * (2 * n + 1));
            n += 1;
            inv_binom = inv_binom * n / (2 * (2 * n - 1));
        }
        let series = fixed_to_arb(sum * 3, b + 3, w);
        let l = (&ArbReal::from_i64(2, w) + &ArbReal::from_i64(3, w).sqrt().expect("positive"))
            .ln()
            .expect("positive");
        &(&pi(w) * &l).mul_pow2(-3) + &series
    })
}

/// Catalan's constant as `Cl₂(π/2)`, by quadrature.
pub fn catalan_g_clausen(digits: u32) -> ArbReal {
    cached("catalan_g_clausen", digits, || {
        let w = digits + 4;
        clausen2(&pi(w).mul_pow2(-1)).expect("Cl2(pi/2) converges")
    })
}

/// ζ(3) via `(5/2) Σ (-1)^(n-1) / (n³ binom(2n,n))`.
pub fn zeta3(digits: u32) -> ArbReal {
    cached("zeta3", digits, || {
        let w = digits + 6;
        let b = fixed_bits(w);
        let mut inv_binom = BigInt::one() << b as usize;
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        loop {
            n += 1;
            inv_binom = inv_binom * n / (2 * (2 * n - 1));
            if inv_binom.is_zero() {
                break;
            }
            let t = &inv_binom / (n * n * n);
            if n % 2 == 1 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        fixed_to_arb(sum * 5, b + 1, w)
    })
}

/// ζ(3) by Euler-Maclaurin: direct sum to N−1 plus the asymptotic tail.
pub fn zeta3_euler_maclaurin(digits: u32) -> ArbReal {
    static BERN: OnceLock<Vec<num_rational::BigRational>> = OnceLock::new();
    cached("zeta3_em", digits, || {
        let w = digits + 8;
        let n_cut = (digits as i64).max(40) + 10;
        let mut s = ArbReal::zero(w);
        for n in 1..n_cut {
            s = &s + &ArbReal::from_i64(n * n * n, w).recip().expect("nonzero");
        }
        let nn = ArbReal::from_i64(n_cut, w);
        let inv_n = nn.recip().expect("nonzero");
        let inv_n2 = inv_n.square();
        s = &s + &inv_n2.mul_pow2(-1);
        s = &s + &(&inv_n2 * &inv_n).mul_pow2(-1);
        let bern = BERN.get_or_init(|| bernoulli(240));
        let mut pw = inv_n2.square();
        for k in 1..=120usize {
            let b2k = ArbReal::from_rational(&bern[2 * k], w);
            let t = (&b2k * &pw).mul_i64(2 * k as i64 + 1).mul_pow2(-1);
            s = &s + &t;
            if t.below_pow10(w as i64 + 2) {
                break;
            }
            pw = &pw * &inv_n2;
        }
        s
    })
}
