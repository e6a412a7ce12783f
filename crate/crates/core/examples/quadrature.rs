//! tanh-sinh quadrature and the Clausen function.

use fibcat::arbreal::{self, clausen2, tanh_sinh, ArbError, ArbReal};

fn main() -> Result<(), ArbError> {
    let d = 40;
    let zero = ArbReal::zero(d);
    let half_pi = arbreal::pi(d).mul_pow2(-1);

    // endpoint singularity: ∫_0^1 ln(x) dx = -1
    let mut ln = |x: &ArbReal| x.ln();
    let q = tanh_sinh(&mut ln, &zero, &ArbReal::one(d), d)?;
    println!("int_0^1 ln x dx        = {}  ({} levels, {} evaluations)", q.value, q.levels, q.evaluations);

    // ∫_0^{π/2} x/sin(x) dx = 2G
    let mut f = |x: &ArbReal| x.checked_div(&x.sin()?);
    let q = tanh_sinh(&mut f, &zero, &half_pi, d)?;
    println!("int_0^(pi/2) x/sin x   = {}", q.value);
    println!("2G                     = {}", arbreal::catalan_g(d).mul_i64(2));

    let pi = arbreal::pi(d);
    for (label, k) in [("pi/6", 6), ("pi/4", 4), ("pi/2", 2)] {
        println!("Cl2({label:4})              = {}", clausen2(&pi.div_i64(k))?);
    }
    Ok(())
}
