use super::{constants, tanh_sinh, ArbError, ArbReal};

/// `Cl₂(θ) = −∫₀^θ ln|2 sin(x/2)| dx`, at the precision of `theta`.
pub fn clausen2(theta: &ArbReal) -> Result<ArbReal, ArbError> {
    let d = theta.digits();
    let extra = theta.log10_abs().max(0.0).ceil() as u32 + 4;
    let w = d + extra;
    let two_pi = constants::pi(w).mul_pow2(1);
    let x = theta.with_digits(w);
    let k = x.checked_div(&two_pi)?.round_to_bigint();
    let r = &x - &(&two_pi * &ArbReal::from_bigint(&k, w));
    if r.is_zero() {
        return Ok(ArbReal::zero(d));
    }
    let neg = r.signum() < 0;
    let r = r.abs().with_digits(d + 2);
    let mut f = |x: &ArbReal| -> Result<ArbReal, ArbError> {
        let s = x.mul_pow2(-1).sin()?.mul_pow2(1);
        Ok(-s.ln()?)
    };
    let out = tanh_sinh(&mut f, &ArbReal::zero(d + 2), &r, d + 2)?;
    let v = out.value.with_digits(d);
    Ok(if neg { -v } else { v })
}
