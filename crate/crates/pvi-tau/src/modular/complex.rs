//! Complex arithmetic on top of `astro_float::BigFloat`.

use super::ModularError;
use crate::exactfield::Rational;
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::ToPrimitive;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Clone for Cx {
    fn clone(&self) -> Self {
        Cx { re: self.re.clone(), im: self.im.clone() }
    }
}

/// Working precision plus the constants cache `astro_float` needs for
/// transcendental functions. One per thread.
pub struct Ctx {
    bits: usize,
    cc: Consts,
    pi: BigFloat,
}

impl Ctx {
    /// Precision of `digits` decimal digits plus 64 guard bits.
    pub fn new(digits: usize) -> Result<Self, ModularError> {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        let mut cc = Consts::new().map_err(|e| ModularError::Backend(format!("{e:?}")))?;
        let pi = cc.pi(bits, RM);
        Ok(Ctx { bits, cc, pi })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn pi(&self) -> BigFloat {
        self.pi.clone()
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn rational(&mut self, q: &Rational) -> BigFloat {
        let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        n.div(&d, self.bits, RM)
    }

    // Real helpers.

    pub fn radd(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn rsub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn rmul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn rdiv(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn rsqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn rexp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc)
    }

    pub fn rln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    /// Argument of `x + iy` in `(−π, π]`.
    pub fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let half_pi = self.rdiv(&self.pi, &self.int(2));
        if x.is_zero() {
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let base = self.rdiv(y, x).atan(self.bits, RM, &mut self.cc);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.rsub(&base, &self.pi)
        } else {
            self.radd(&base, &self.pi)
        }
    }

    /// Decimal value for reporting. Magnitudes below `f64` range map to 0.
    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        let s = a.format(Radix::Dec, RM, &mut self.cc).unwrap_or_default();
        s.parse::<f64>().unwrap_or_else(|_| parse_astro(&s))
    }

    // Complex operations.

    pub fn cx(&self, re: BigFloat, im: BigFloat) -> Cx {
        Cx { re, im }
    }

    pub fn real(&self, x: BigFloat) -> Cx {
        Cx { re: x, im: self.int(0) }
    }

    pub fn cint(&self, n: i64) -> Cx {
        self.real(self.int(n))
    }

    pub fn one(&self) -> Cx {
        self.cint(1)
    }

    pub fn i(&self) -> Cx {
        self.cx(self.int(0), self.int(1))
    }

    pub fn add(&self, a: &Cx, b: &Cx) -> Cx {
        self.cx(self.radd(&a.re, &b.re), self.radd(&a.im, &b.im))
    }

    pub fn sub(&self, a: &Cx, b: &Cx) -> Cx {
        self.cx(self.rsub(&a.re, &b.re), self.rsub(&a.im, &b.im))
    }

    pub fn neg(&self, a: &Cx) -> Cx {
        self.cx(a.re.neg(), a.im.neg())
    }

    pub fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        let re = self.rsub(&self.rmul(&a.re, &b.re), &self.rmul(&a.im, &b.im));
        let im = self.radd(&self.rmul(&a.re, &b.im), &self.rmul(&a.im, &b.re));
        self.cx(re, im)
    }

    pub fn scale(&self, a: &Cx, k: &BigFloat) -> Cx {
        self.cx(self.rmul(&a.re, k), self.rmul(&a.im, k))
    }

    pub fn norm_sqr(&self, a: &Cx) -> BigFloat {
        self.radd(&self.rmul(&a.re, &a.re), &self.rmul(&a.im, &a.im))
    }

    pub fn abs(&self, a: &Cx) -> BigFloat {
        self.rsqrt(&self.norm_sqr(a))
    }

    pub fn recip(&self, a: &Cx) -> Result<Cx, ModularError> {
        let n = self.norm_sqr(a);
        if n.is_zero() {
            return Err(ModularError::DivisionByZero);
        }
        Ok(self.cx(self.rdiv(&a.re, &n), self.rdiv(&a.im, &n).neg()))
    }

    pub fn div(&self, a: &Cx, b: &Cx) -> Result<Cx, ModularError> {
        Ok(self.mul(a, &self.recip(b)?))
    }

    pub fn powi(&self, a: &Cx, e: i64) -> Result<Cx, ModularError> {
        let mut base = if e < 0 { self.recip(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn exp(&mut self, a: &Cx) -> Cx {
        let m = self.rexp(&a.re);
        let c = a.im.cos(self.bits, RM, &mut self.cc);
        let s = a.im.sin(self.bits, RM, &mut self.cc);
        self.cx(self.rmul(&m, &c), self.rmul(&m, &s))
    }

    /// `e^{iπw}`.
    pub fn exp_ipi(&mut self, w: &Cx) -> Cx {
        let z = self.cx(self.rmul(&w.im, &self.pi).neg(), self.rmul(&w.re, &self.pi));
        self.exp(&z)
    }

    /// `e^{iπr}` for rational `r`.
    pub fn root_of_unity(&mut self, r: &Rational) -> Cx {
        let x = self.rational(r);
        let w = self.real(x);
        self.exp_ipi(&w)
    }

    /// Principal logarithm.
    pub fn ln(&mut self, a: &Cx) -> Result<Cx, ModularError> {
        let n = self.norm_sqr(a);
        if n.is_zero() {
            return Err(ModularError::DivisionByZero);
        }
        let ln = self.rln(&n);
        let half = self.rdiv(&ln, &self.int(2));
        let arg = self.atan2(&a.im, &a.re);
        Ok(self.cx(half, arg))
    }

    /// Principal branch of `a^r`.
    pub fn pow_rational(&mut self, a: &Cx, r: &Rational) -> Result<Cx, ModularError> {
        if r.is_integer() {
            if let Some(e) = r.to_integer().to_i64() {
                return self.powi(a, e);
            }
        }
        let l = self.ln(a)?;
        let x = self.rational(r);
        let s = self.scale(&l, &x);
        Ok(self.exp(&s))
    }

    /// Principal square root.
    pub fn sqrt(&mut self, a: &Cx) -> Result<Cx, ModularError> {
        self.pow_rational(a, &crate::exactfield::rat(1, 2))
    }

    /// `|a − b|`.
    pub fn abs_err(&mut self, a: &Cx, b: &Cx) -> f64 {
        let d = self.abs(&self.sub(a, b));
        self.to_f64(&d)
    }

    pub fn to_f64_pair(&mut self, a: &Cx) -> (f64, f64) {
        (self.to_f64(&a.re), self.to_f64(&a.im))
    }
}

/// Fallback for decimal strings whose exponent overflows `f64` parsing.
fn parse_astro(s: &str) -> f64 {
    let t = s.trim();
    match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: f64 = m.parse().unwrap_or(0.0);
            let e: i64 = e.parse().unwrap_or(0);
            if e < -320 {
                0.0
            } else if e > 320 {
                f64::INFINITY * m.signum()
            } else {
                m * 10f64.powi(e as i32)
            }
        }
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn basic_identities() {
        let mut c = Ctx::new(60).unwrap();
        let w = c.cx(c.f64(0.25), c.f64(0.75));
        let e = c.exp_ipi(&w);
        let back = c.ln(&e).unwrap();
        let pi = c.pi();
        let want = c.cx(c.rmul(&pi, &c.f64(-0.75)), c.rmul(&pi, &c.f64(0.25)));
        assert!(c.abs_err(&back, &want) < 1e-60);
        let i = c.i();
        let m1 = c.mul(&i, &i);
        assert!(c.abs_err(&m1, &c.cint(-1)) < 1e-70);
        let r = c.root_of_unity(&rat(1, 3));
        let cube = c.powi(&r, 3).unwrap();
        assert!(c.abs_err(&cube, &c.cint(-1)) < 1e-60);
        let s = c.sqrt(&c.cint(-4)).unwrap();
        assert!(c.abs_err(&s, &c.cx(c.int(0), c.int(2))) < 1e-60);
    }

    #[test]
    fn reporting_conversion() {
        let mut c = Ctx::new(60).unwrap();
        let big = c.rexp(&c.int(100));
        let x = c.rdiv(&c.int(1), &big);
        let v = c.to_f64(&x);
        assert!((v / (-100f64).exp() - 1.0).abs() < 1e-12, "{v}");
        assert_eq!(c.to_f64(&c.int(0)), 0.0);
    }
}
