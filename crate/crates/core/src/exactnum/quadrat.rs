use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRat { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadRat { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        QuadRat { a: BigRational::zero(), b: BigRational::one() }
    }

    /// Golden ratio `(1 + √5)/2`.
    pub fn alpha() -> Self {
        QuadRat { a: half(), b: half() }
    }

    /// `(1 - √5)/2`.
    pub fn beta() -> Self {
        QuadRat { a: half(), b: -half() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadRat { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(QuadRat { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        if n < 0 && self.is_zero() {
            return Err(ExactError::ZeroToNegativePower);
        }
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QuadRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Sign of the real number `a + b√5`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // opposite signs: compare a² against 5b²
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let five = BigRational::from_integer(BigInt::from(5));
        QuadRat {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: QuadRat) -> QuadRat {
        &self + &rhs
    }
}

impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: QuadRat) -> QuadRat {
        &self - &rhs
    }
}

impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: QuadRat) -> QuadRat {
        &self * &rhs
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}√5", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}√5", self.a, -self.b.clone())
        } else {
            write!(f, "{} + {}√5", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{fibonacci, lucas, rat};

    #[test]
    fn alpha_beta_relations() {
        let a = QuadRat::alpha();
        let b = QuadRat::beta();
        assert_eq!(&a + &b, QuadRat::one());
        assert_eq!(&a * &b, QuadRat::from_int(-1));
        assert_eq!(&a - &b, QuadRat::sqrt5());
        assert_eq!(&a * &a, &a + &QuadRat::one());
    }

    #[test]
    fn power_of_alpha() {
        let p = QuadRat::alpha().pow(10).unwrap();
        assert_eq!(p, QuadRat::new(rat(123, 2), rat(55, 2)));
        let q = QuadRat::alpha().pow(-3).unwrap();
        assert_eq!(&q * &QuadRat::alpha().pow(3).unwrap(), QuadRat::one());
    }

    #[test]
    fn binet_small() {
        let s5 = QuadRat::sqrt5();
        for n in -20..=20 {
            let an = QuadRat::alpha().pow(n).unwrap();
            let bn = QuadRat::beta().pow(n).unwrap();
            let f = (&an - &bn).checked_div(&s5).unwrap();
            assert_eq!(f, QuadRat::from_rational(BigRational::from_integer(fibonacci(n))));
            assert_eq!(&an + &bn, QuadRat::from_rational(BigRational::from_integer(lucas(n))));
        }
    }

    #[test]
    fn signs() {
        assert_eq!(QuadRat::beta().signum(), -1);
        assert_eq!(QuadRat::alpha().signum(), 1);
        assert_eq!(QuadRat::new(rat(9, 4), rat(-1, 1)).signum(), 1);
        assert_eq!(QuadRat::new(rat(2, 1), rat(-1, 1)).signum(), -1);
        assert_eq!(QuadRat::zero().inv(), Err(ExactError::DivisionByZero));
    }
}
