//! Exact integers, rationals and the quadratic field Q(√5), plus the integer
//! sequences the identities are written in.

mod quadrat;
mod sequences;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quadrat::QuadRat;
pub use sequences::{bernoulli, binomial, binomial_ext, catalan, fibonacci, fibonacci_lucas, lucas};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
}

/// `n/d` as a normalized rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power of a rational; negative exponents invert.
pub fn rat_pow(base: &BigRational, exp: i64) -> Result<BigRational, ExactError> {
    use num_traits::{One, Pow, Zero};
    if exp < 0 && base.is_zero() {
        return Err(ExactError::ZeroToNegativePower);
    }
    if exp == 0 {
        return Ok(BigRational::one());
    }
    let p = Pow::pow(base, exp.unsigned_abs());
    Ok(if exp < 0 { p.recip() } else { p })
}
