use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{bits_for, constants, ArbError, ArbReal};

// Taylor loop terminates once a term drops below 2^-(bits) relative to `scale`.
fn negligible(term: &ArbReal, scale_mag: i64, digits: u32) -> bool {
    match term.mag2() {
        None => true,
        Some(m) => m < scale_mag - bits_for(digits) as i64 - 2,
    }
}

impl ArbReal {
    pub fn exp(&self) -> Result<ArbReal, ArbError> {
        let d = self.digits;
        if self.is_zero() {
            return Ok(ArbReal::one(d));
        }
        let xf = self.to_f64();
        if xf.abs() > 1e15 {
            return Err(ArbError::Domain("exp argument out of range".into()));
        }
        const HALVINGS: i64 = 12;
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let kdig = (k.unsigned_abs() as f64 + 1.0).log10().ceil() as u32;
        let w = d + 8 + kdig;
        let x = self.with_digits(w);
        let r = if k == 0 { x } else { &x - &constants::ln2(w).mul_i64(k) };
        let r = r.mul_pow2(-HALVINGS).with_digits(d + 8);
        let mut sum = ArbReal::one(d + 8);
        let mut term = ArbReal::one(d + 8);
        let mut j = 1i64;
        loop {
            term = (&term * &r).div_i64(j);
            if negligible(&term, 0, d + 8) {
                break;
            }
            sum = &sum + &term;
            j += 1;
        }
        for _ in 0..HALVINGS {
            sum = sum.square();
        }
        Ok(sum.mul_pow2(k).with_digits(d))
    }

    pub fn ln(&self) -> Result<ArbReal, ArbError> {
        if self.signum() <= 0 {
            return Err(ArbError::Domain("logarithm of a non-positive number".into()));
        }
        let d = self.digits;
        let mut k = self.mag2().expect("nonzero");
        let mut y = self.mul_pow2(-k);
        if y.to_f64() > std::f64::consts::SQRT_2 {
            k += 1;
            y = y.mul_pow2(-1);
        }
        let kdig = (k.unsigned_abs() as f64 + 1.0).log10().ceil() as u32;
        let w = d + 6 + kdig;
        let y = y.with_digits(w);
        let one = ArbReal::one(w);
        let z = (&y - &one).checked_div(&(&y + &one))?;
        let mut sum = ArbReal::zero(w);
        if !z.is_zero() {
            let zmag = z.mag2().expect("nonzero");
            let z2 = z.square();
            let mut pow = z.clone();
            let mut j = 0i64;
            loop {
                let t = pow.div_i64(2 * j + 1);
                if negligible(&t, zmag, w) {
                    break;
                }
                sum = &sum + &t;
                pow = &pow * &z2;
                j += 1;
            }
        }
        let mut r = sum.mul_pow2(1);
        if k != 0 {
            r = &r + &constants::ln2(w).mul_i64(k);
        }
        Ok(r.with_digits(d))
    }

    fn sin_cos_small(r: &ArbReal, w: u32) -> (ArbReal, ArbReal) {
        let r2 = r.square();
        let rmag = r.mag2().unwrap_or(0);
        let mut s = r.clone();
        let mut t = r.clone();
        let mut j = 1i64;
        loop {
            t = -(&t * &r2).div_i64((2 * j) * (2 * j + 1));
            if r.is_zero() || negligible(&t, rmag, w) {
                break;
            }
            s = &s + &t;
            j += 1;
        }
        let mut c = ArbReal::one(w);
        let mut t = ArbReal::one(w);
        let mut j = 1i64;
        loop {
            t = -(&t * &r2).div_i64((2 * j - 1) * (2 * j));
            if r.is_zero() || negligible(&t, 0, w) {
                break;
            }
            c = &c + &t;
            j += 1;
        }
        (s, c)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> Result<(ArbReal, ArbReal), ArbError> {
        let d = self.digits;
        if self.is_zero() {
            return Ok((ArbReal::zero(d), ArbReal::one(d)));
        }
        let xf = self.to_f64();
        if xf.abs() > 1e15 {
            return Err(ArbError::Domain("trigonometric argument out of range".into()));
        }
        let w = d + 6;
        if xf.abs() < 0.78 {
            let (s, c) = Self::sin_cos_small(&self.with_digits(w), w);
            return Ok((s.with_digits(d), c.with_digits(d)));
        }
        let extra = (xf.abs().log10().max(0.0)).ceil() as u32 + 4;
        let half_pi = constants::pi(w + extra).mul_pow2(-1);
        let x = self.with_digits(w + extra);
        let k = x.checked_div(&half_pi)?.round_to_bigint();
        let r = (&x - &(&half_pi * &ArbReal::from_bigint(&k, w + extra))).with_digits(w);
        let (s, c) = Self::sin_cos_small(&r, w);
        let q = k.mod_floor_i64(4);
        let (s, c) = match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        Ok((s.with_digits(d), c.with_digits(d)))
    }

    pub fn sin(&self) -> Result<ArbReal, ArbError> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<ArbReal, ArbError> {
        Ok(self.sin_cos()?.1)
    }

    pub fn arctan(&self) -> Result<ArbReal, ArbError> {
        let d = self.digits;
        if self.is_zero() {
            return Ok(ArbReal::zero(d));
        }
        let w = d + 6;
        let a = self.abs().with_digits(w);
        let one = ArbReal::one(w);
        let r = if a.cmp_value(&one).is_gt() {
            let inv = a.recip()?;
            &constants::pi(w).mul_pow2(-1) - &inv.arctan()?
        } else {
            const HALVINGS: i64 = 3;
            let mut x = a;
            for _ in 0..HALVINGS {
                let den = &one + &(&one + &x.square()).sqrt()?;
                x = x.checked_div(&den)?;
            }
            let xmag = x.mag2().expect("nonzero");
            let x2 = x.square();
            let mut pow = x.clone();
            let mut sum = ArbReal::zero(w);
            let mut j = 0i64;
            loop {
                let t = pow.div_i64(2 * j + 1);
                if negligible(&t, xmag, w) {
                    break;
                }
                sum = if j % 2 == 0 { &sum + &t } else { &sum - &t };
                pow = &pow * &x2;
                j += 1;
            }
            sum.mul_pow2(HALVINGS)
        };
        let r = if self.signum() < 0 { -r } else { r };
        Ok(r.with_digits(d))
    }

    pub fn arcsin(&self) -> Result<ArbReal, ArbError> {
        let d = self.digits;
        let one = ArbReal::one(d);
        match self.abs().cmp_value(&one) {
            std::cmp::Ordering::Greater => {
                Err(ArbError::Domain("arcsin argument outside [-1, 1]".into()))
            }
            std::cmp::Ordering::Equal => {
                let h = constants::pi(d).mul_pow2(-1);
                Ok(if self.signum() < 0 { -h } else { h })
            }
            std::cmp::Ordering::Less => {
                let w = d + 6;
                let x = self.with_digits(w);
                let one = ArbReal::one(w);
                let c = (&(&one - &x) * &(&one + &x)).sqrt()?;
                Ok(x.checked_div(&c)?.arctan()?.with_digits(d))
            }
        }
    }

    fn exp_pair(&self) -> Result<(ArbReal, ArbReal, u32), ArbError> {
        let d = self.digits;
        let loss = (-self.log10_abs()).max(0.0).ceil() as u32;
        let w = d + 4 + loss;
        let e = self.with_digits(w).exp()?;
        let ei = e.recip()?;
        Ok((e, ei, d))
    }

    pub fn sinh(&self) -> Result<ArbReal, ArbError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (e, ei, d) = self.exp_pair()?;
        Ok((&e - &ei).mul_pow2(-1).with_digits(d))
    }

    pub fn cosh(&self) -> Result<ArbReal, ArbError> {
        let (e, ei, d) = self.exp_pair()?;
        Ok((&e + &ei).mul_pow2(-1).with_digits(d))
    }

    pub fn tanh(&self) -> Result<ArbReal, ArbError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (e, ei, d) = self.exp_pair()?;
        Ok((&e - &ei).checked_div(&(&e + &ei))?.with_digits(d))
    }
}

trait ModFloorI64 {
    fn mod_floor_i64(&self, m: i64) -> i64;
}

impl ModFloorI64 for BigInt {
    fn mod_floor_i64(&self, m: i64) -> i64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(m)).to_i64().expect("small residue")
    }
}
