//! Dense univariate polynomials with big-integer coefficients.
//!
//! Coefficients are stored in ascending order with no trailing zeros. Products
//! switch from schoolbook multiplication to Kronecker substitution once both
//! operands are long enough for the big-integer multiplier to win.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const KRONECKER_THRESHOLD: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        Self::new(vec![v])
    }

    /// `a0 + a1 ζ`.
    pub fn linear(a0: i64, a1: i64) -> Self {
        Self::from_i64s(&[a0, a1])
    }

    pub fn x() -> Self {
        Self::linear(0, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = 0, handy for bookkeeping.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(c, p)` with `self = c·p`, `p` primitive with positive leading coefficient.
    pub fn primitive_signed(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut g = self.content();
        if self.c.last().unwrap().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        (g.clone(), ZPoly { c: self.c.iter().map(|x| x / &g).collect() })
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Divides every coefficient by `k`; `k` must divide the content.
    pub fn div_scalar_exact(&self, k: &BigInt) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    pub fn shift(&self, n: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); n];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.c.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        let mut result = ZPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Homogenised Horner: sum c_i n^i d^(deg-i), then divide by d^deg.
        if self.is_zero() {
            return BigRational::zero();
        }
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.c.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // dpow is now d^(deg+1); one factor too many.
        BigRational::new(acc * d, dpow)
    }

    /// True when `a ζ + b` divides the polynomial, i.e. `self(-b/a) = 0`.
    pub fn has_root(&self, a: i64, b: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        // Evaluate a^deg · self(-b/a) = sum c_i (-b)^i a^(deg-i).
        let a = BigInt::from(a);
        let nb = BigInt::from(-b);
        let mut acc = BigInt::zero();
        let mut apow = BigInt::one();
        for c in self.c.iter().rev() {
            acc = acc * &nb + c * &apow;
            apow *= &a;
        }
        acc.is_zero()
    }

    /// Exact quotient by the linear factor `a ζ + b` (with `a > 0`), or `None`
    /// when the division leaves a remainder or a non-integral coefficient.
    pub fn div_linear(&self, a: i64, b: i64) -> Option<ZPoly> {
        let n = self.c.len();
        if n == 0 {
            return Some(ZPoly::zero());
        }
        if n == 1 {
            return None;
        }
        let a = BigInt::from(a);
        let b = BigInt::from(b);
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        // Work from the top: c_i = a q_{i-1} + b q_i.
        for i in (1..n).rev() {
            let num = &self.c[i] - &carry;
            let (qi, r) = num.div_rem(&a);
            if !r.is_zero() {
                return None;
            }
            carry = &b * &qi;
            q[i - 1] = qi;
        }
        if self.c[0] != carry {
            return None;
        }
        Some(ZPoly::new(q))
    }

    /// Exact division over ℤ[ζ]; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dn = d.c.len();
        let n = self.c.len();
        if n < dn {
            return None;
        }
        if dn == 1 {
            let k = &d.c[0];
            let mut out = Vec::with_capacity(n);
            for x in &self.c {
                let (q, r) = x.div_rem(k);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(ZPoly::new(out));
        }
        if dn == 2 {
            return self.div_linear_general(&d.c[1], &d.c[0]);
        }
        if n >= 2 * KRONECKER_THRESHOLD && dn >= KRONECKER_THRESHOLD {
            return self.div_exact_kronecker(d);
        }
        self.div_exact_classical(d)
    }

    fn div_linear_general(&self, a: &BigInt, b: &BigInt) -> Option<ZPoly> {
        let n = self.c.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            let num = &self.c[i] - &carry;
            let (qi, r) = num.div_rem(a);
            if !r.is_zero() {
                return None;
            }
            carry = b * &qi;
            q[i - 1] = qi;
        }
        if self.c[0] != carry {
            return None;
        }
        Some(ZPoly::new(q))
    }

    fn div_exact_classical(&self, d: &ZPoly) -> Option<ZPoly> {
        let dn = d.c.len();
        let mut r = self.c.clone();
        let qn = r.len() - dn + 1;
        let mut q = vec![BigInt::zero(); qn];
        let lc = d.c.last().unwrap();
        for i in (0..qn).rev() {
            let top = &r[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i + j] -= &qi * dc;
            }
            q[i] = qi;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(ZPoly::new(q))
    }

    fn div_exact_kronecker(&self, d: &ZPoly) -> Option<ZPoly> {
        // Any exact quotient has coefficients bounded by 2^deg(q) · |self|_2,
        // so packing with this slot width recovers it unambiguously.
        let qdeg = self.c.len() - d.c.len();
        let bits = self.max_bits() + qdeg as u64 + (self.c.len() as f64).log2().ceil() as u64 + 4;
        let slot = bits.div_ceil(32) as usize;
        let a = pack(&self.c, slot);
        let b = pack(&d.c, slot);
        let (qv, rv) = a.div_rem(&b);
        if !rv.is_zero() {
            return None;
        }
        let q = ZPoly::new(unpack(&qv, slot, qdeg + 1)?);
        if q.c.len() != qdeg + 1 {
            return None;
        }
        if &(&q * d) == self {
            Some(q)
        } else {
            None
        }
    }

    /// Homogenised composition with a Möbius map:
    /// `(cζ + d)^n · self((aζ + b)/(cζ + d))` for `n >= deg`.
    pub fn compose_mobius(&self, a: i64, b: i64, c: i64, d: i64, n: usize) -> ZPoly {
        assert!(self.is_zero() || n >= self.deg());
        let num = ZPoly::linear(b, a);
        let den = ZPoly::linear(d, c);
        let mut num_pows = Vec::with_capacity(n + 1);
        let mut den_pows = Vec::with_capacity(n + 1);
        num_pows.push(ZPoly::one());
        den_pows.push(ZPoly::one());
        for i in 1..=n {
            num_pows.push(&num_pows[i - 1] * &num);
            den_pows.push(&den_pows[i - 1] * &den);
        }
        let mut acc = ZPoly::zero();
        for (i, ci) in self.c.iter().enumerate() {
            let term = (&num_pows[i] * &den_pows[n - i]).scale(ci);
            acc = &acc + &term;
        }
        acc
    }

    /// `self(-1-ζ)`, computed by a Taylor shift.
    pub fn reflect(&self) -> ZPoly {
        // p(-1-ζ) = q(ζ+1) with q(x) = p(-x).
        let negated: Vec<BigInt> = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
            .collect();
        taylor_shift_one(negated)
    }

    /// `ζ^deg · self(1/ζ)`.
    pub fn reversed(&self) -> ZPoly {
        let mut c = self.c.clone();
        c.reverse();
        ZPoly::new(c)
    }

    fn mul_schoolbook(&self, o: &ZPoly) -> ZPoly {
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    fn mul_kronecker(&self, o: &ZPoly) -> ZPoly {
        let terms = self.c.len().min(o.c.len()) as f64;
        let bits = self.max_bits() + o.max_bits() + terms.log2().ceil() as u64 + 2;
        let slot = bits.div_ceil(32) as usize;
        let a = pack(&self.c, slot);
        let b = pack(&o.c, slot);
        let len = self.c.len() + o.c.len() - 1;
        ZPoly::new(unpack(&(a * b), slot, len).expect("kronecker product overflow"))
    }
}

fn taylor_shift_one(mut c: Vec<BigInt>) -> ZPoly {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
    ZPoly::new(c)
}

/// Evaluates at 2^(32·slot) as a signed big integer.
fn pack(c: &[BigInt], slot: usize) -> BigInt {
    let mut pos: Vec<u32> = vec![0; c.len() * slot + 1];
    let mut neg: Vec<u32> = vec![0; c.len() * slot + 1];
    let mut any_neg = false;
    for (i, x) in c.iter().enumerate() {
        let (sign, digits) = x.to_u32_digits();
        let target = if sign == Sign::Minus {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        target[i * slot..i * slot + digits.len()].copy_from_slice(&digits);
    }
    let p = BigInt::from_biguint(Sign::Plus, BigUint::new(pos));
    if any_neg {
        p - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    } else {
        p
    }
}

/// Inverse of `pack` with balanced digits; `None` if more than `len` digits appear.
fn unpack(v: &BigInt, slot: usize, len: usize) -> Option<Vec<BigInt>> {
    let negative = v.is_negative();
    let digits = v.magnitude().to_u32_digits();
    let half = BigUint::one() << (32 * slot - 1);
    let full = BigUint::one() << (32 * slot);
    let mut out = Vec::with_capacity(len);
    let mut carry = false;
    let nslots = digits.len().div_ceil(slot).max(1);
    for i in 0..nslots.max(len) {
        let lo = (i * slot).min(digits.len());
        let hi = ((i + 1) * slot).min(digits.len());
        let mut chunk = BigUint::new(digits[lo..hi].to_vec());
        if carry {
            chunk += 1u32;
        }
        let coeff = if chunk >= half {
            carry = true;
            -BigInt::from_biguint(Sign::Plus, &full - &chunk)
        } else {
            carry = chunk == full;
            if carry {
                BigInt::zero()
            } else {
                BigInt::from_biguint(Sign::Plus, chunk)
            }
        };
        out.push(if negative { -coeff } else { coeff });
    }
    if carry {
        return None;
    }
    while out.len() > len {
        if !out.last().unwrap().is_zero() {
            return None;
        }
        out.pop();
    }
    Some(out)
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] += x;
        }
        ZPoly::new(c)
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigInt::zero());
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] -= x;
        }
        ZPoly::new(c)
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        if self.c.len().min(o.c.len()) >= KRONECKER_THRESHOLD {
            self.mul_kronecker(o)
        } else {
            self.mul_schoolbook(o)
        }
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        -&self
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a = ZPoly::new((0..40).map(|i| BigInt::from((i * 7919) % 1013 - 500) << (i % 5 * 20)).collect());
        let b = ZPoly::new((0..35).map(|i| BigInt::from((i * 104729) % 777 - 388)).collect());
        assert_eq!(a.mul_kronecker(&b), a.mul_schoolbook(&b));
        let neg = -&a;
        assert_eq!(neg.mul_kronecker(&b), neg.mul_schoolbook(&b));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = ZPoly::new((0..60).map(|i| BigInt::from(i * i - 30 * i + 7)).collect());
        let b = ZPoly::new((0..30).map(|i| BigInt::from(3 * i + 1 - (i % 4) * 9)).collect());
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact_classical(&b), Some(a.clone()));
        let off = &prod + &ZPoly::one();
        assert_eq!(off.div_exact(&b), None);
    }

    #[test]
    fn linear_factors() {
        // (2ζ+1)(ζ-1) = 2ζ² - ζ - 1
        let f = p(&[-1, -1, 2]);
        assert!(f.has_root(2, 1));
        assert!(f.has_root(1, -1));
        assert!(!f.has_root(1, 2));
        assert_eq!(f.div_linear(2, 1), Some(p(&[-1, 1])));
        assert_eq!(f.div_linear(1, 2), None);
    }

    #[test]
    fn reflect_and_reverse() {
        let f = p(&[1, 2, 3]);
        // 1 + 2(-1-ζ) + 3(1+ζ)² = 2 + 4ζ + 3ζ²
        assert_eq!(f.reflect(), p(&[2, 4, 3]));
        assert_eq!(f.reversed(), p(&[3, 2, 1]));
        assert_eq!(f.compose_mobius(-1, -1, 0, 1, 2), f.reflect());
        assert_eq!(f.compose_mobius(0, 1, 1, 0, 2), f.reversed());
    }

    #[test]
    fn rational_evaluation() {
        let f = p(&[1, 2, 3]);
        let x = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(f.eval(&x), BigRational::new(BigInt::from(3), BigInt::from(4)));
    }
}
