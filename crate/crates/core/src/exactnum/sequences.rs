use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient for `n >= 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient extended to negative upper index via
/// `binom(n, k) = (-1)^k binom(k - n - 1, k)`; zero for `k < 0`.
pub fn binomial_ext(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        return binomial(n as u64, k);
    }
    let b = binomial((k - n - 1) as u64, k);
    if k.is_odd() {
        -b
    } else {
        b
    }
}

/// Catalan number `C_n = binom(2n, n)/(n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

// (F_n, F_{n+1}) for n >= 0 by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// `(F_n, L_n)` for any integer `n`.
pub fn fibonacci_lucas(n: i64) -> (BigInt, BigInt) {
    let m = n.unsigned_abs();
    let (f, f1) = fib_pair(m);
    let l = &f1 * 2 - &f;
    if n >= 0 {
        return (f, l);
    }
    // F_{-m} = (-1)^{m+1} F_m, L_{-m} = (-1)^m L_m
    if m % 2 == 0 {
        (-f, l)
    } else {
        (f, -l)
    }
}

pub fn fibonacci(n: i64) -> BigInt {
    fibonacci_lucas(n).0
}

pub fn lucas(n: i64) -> BigInt {
    fibonacci_lucas(n).1
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    // Akiyama-Tanigawa yields B_1 = +1/2; flip it afterwards.
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(catalan(10), BigInt::from(16796));
        assert_eq!(fibonacci(10), BigInt::from(55));
        assert_eq!(fibonacci(-2), BigInt::from(-1));
        assert_eq!(lucas(7), BigInt::from(29));
        assert_eq!(lucas(-1), BigInt::from(-1));
        assert_eq!(binomial_ext(-2, -1), BigInt::zero());
        assert_eq!(binomial_ext(-2, 3), BigInt::from(-4));
        assert_eq!(binomial_ext(-1, 4), BigInt::one());
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(12);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[0], r(1, 1));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[3], r(0, 1));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[12], r(-691, 2730));
    }

    #[test]
    fn catalan_matches_central_binomial() {
        for n in 0..60u64 {
            assert_eq!(catalan(n) * (n + 1), binomial(2 * n, n as i64));
        }
    }
}
