//! Rational functions whose poles lie in Λ = {0, 1, −1, −2, −1/2}, stored as
//! `lead · ∏ basis^e · remainder` with a remainder free of roots in Λ.
//!
//! Every lattice value has this shape, so sums, products, derivatives and the
//! two symmetry substitutions can be carried out without any polynomial gcd.

use super::ratfunc::{RationalFunction, Substitution};
use super::rational::{rpow, Rational};
use super::zpoly::ZPoly;
use super::ExactError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The five basis factors ζ, ζ+1, ζ−1, ζ+2, 2ζ+1, one per cusp in Λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Z,
    ZPlus1,
    ZMinus1,
    ZPlus2,
    TwoZPlus1,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::Z, Basis::ZPlus1, Basis::ZMinus1, Basis::ZPlus2, Basis::TwoZPlus1];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(a, b)` with the factor equal to `aζ + b`.
    pub fn linear(self) -> (i64, i64) {
        match self {
            Basis::Z => (1, 0),
            Basis::ZPlus1 => (1, 1),
            Basis::ZMinus1 => (1, -1),
            Basis::ZPlus2 => (1, 2),
            Basis::TwoZPlus1 => (2, 1),
        }
    }

    pub fn poly(self) -> ZPoly {
        let (a, b) = self.linear();
        ZPoly::linear(b, a)
    }

    /// The cusp (root of the factor).
    pub fn cusp(self) -> Rational {
        let (a, b) = self.linear();
        Rational::new(BigInt::from(-b), BigInt::from(a))
    }

    /// Label used in serialised forms: "0", "1", "-1", "-2", "-1/2".
    pub fn label(self) -> &'static str {
        match self {
            Basis::Z => "0",
            Basis::ZPlus1 => "-1",
            Basis::ZMinus1 => "1",
            Basis::ZPlus2 => "-2",
            Basis::TwoZPlus1 => "-1/2",
        }
    }

    pub fn from_label(s: &str) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.label() == s)
    }
}

/// Multiplies by `(aζ + b)^e`, `e >= 0`.
fn mul_linear_pow(p: &ZPoly, a: i64, b: i64, e: u32) -> ZPoly {
    if e == 0 {
        return p.clone();
    }
    if e > 8 {
        return p * &ZPoly::linear(b, a).pow(e);
    }
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    let mut c = p.coeffs().to_vec();
    for _ in 0..e {
        let mut out = vec![BigInt::zero(); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            out[i] += x * &b;
            out[i + 1] += x * &a;
        }
        c = out;
    }
    ZPoly::new(c)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredForm {
    lead: Rational,
    exps: [i64; 5],
    rem: ZPoly,
}

impl FactoredForm {
    pub fn zero() -> Self {
        FactoredForm { lead: Rational::zero(), exps: [0; 5], rem: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredForm { lead: c, exps: [0; 5], rem: ZPoly::one() }
    }

    pub fn monomial(lead: Rational, exps: [i64; 5]) -> Self {
        if lead.is_zero() {
            return Self::zero();
        }
        FactoredForm { lead, exps, rem: ZPoly::one() }
    }

    pub fn basis(b: Basis) -> Self {
        let mut e = [0; 5];
        e[b.index()] = 1;
        Self::monomial(Rational::one(), e)
    }

    /// Normalising constructor from an arbitrary integer polynomial part.
    pub fn from_parts(lead: Rational, mut exps: [i64; 5], poly: ZPoly) -> Self {
        if lead.is_zero() || poly.is_zero() {
            return Self::zero();
        }
        let mut p = poly;
        for b in Basis::ALL {
            let (a, c) = b.linear();
            while !p.is_constant() && p.has_root(a, c) {
                p = p.div_linear(a, c).expect("root implies exact division");
                exps[b.index()] += 1;
            }
        }
        let (content, p) = p.primitive_signed();
        FactoredForm { lead: lead * Rational::from_integer(content), exps, rem: p }
    }

    /// Assembles parts that are already normalised (used by deserialisation,
    /// which validates separately).
    pub fn from_normalized(lead: Rational, exps: [i64; 5], rem: ZPoly) -> Result<Self, ExactError> {
        let check = Self::from_parts(lead.clone(), exps, rem.clone());
        if check.lead != lead || check.exps != exps || check.rem != rem {
            return Err(ExactError::NotNormalized);
        }
        Ok(check)
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Self::from_parts(Rational::one(), [0; 5], p.clone())
    }

    pub fn lead(&self) -> &Rational {
        &self.lead
    }

    pub fn exponents(&self) -> &[i64; 5] {
        &self.exps
    }

    pub fn exponent(&self, b: Basis) -> i64 {
        self.exps[b.index()]
    }

    pub fn remainder(&self) -> &ZPoly {
        &self.rem
    }

    pub fn is_zero(&self) -> bool {
        self.lead.is_zero()
    }

    /// Order at ∞ in the convention `ζ^o · f` finite and nonzero.
    pub fn order_at_infinity(&self) -> i64 {
        -(self.exps.iter().sum::<i64>() + self.rem.deg() as i64)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let mut num = self.rem.clone();
        let mut den = ZPoly::one();
        for b in Basis::ALL {
            let e = self.exps[b.index()];
            let (a, c) = b.linear();
            if e > 0 {
                num = mul_linear_pow(&num, a, c, e as u32);
            } else if e < 0 {
                den = mul_linear_pow(&den, a, c, (-e) as u32);
            }
        }
        RationalFunction::from_reduced(self.lead.clone(), num, den)
    }

    /// Factors a rational function over the cusps; fails if it has a pole
    /// outside Λ.
    pub fn from_rational_function(f: &RationalFunction) -> Result<Self, ExactError> {
        if f.is_zero() {
            return Err(ExactError::ZeroFunction);
        }
        let num = Self::from_parts(f.lead().clone(), [0; 5], f.numerator().clone());
        let den = Self::from_parts(Rational::one(), [0; 5], f.denominator().clone());
        if !den.rem.is_constant() {
            return Err(ExactError::PoleOutsideLambda);
        }
        num.div_exact(&den)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() || self.is_zero() {
            return Self::zero();
        }
        FactoredForm { lead: &self.lead * k, exps: self.exps, rem: self.rem.clone() }
    }

    pub fn neg(&self) -> Self {
        FactoredForm { lead: -&self.lead, exps: self.exps, rem: self.rem.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e += f;
        }
        let rem = if o.rem.is_constant() {
            self.rem.clone()
        } else if self.rem.is_constant() {
            o.rem.clone()
        } else {
            &self.rem * &o.rem
        };
        FactoredForm { lead: &self.lead * &o.lead, exps, rem }
    }

    /// Exact quotient; the divisor's remainder must divide ours.
    pub fn div_exact(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e -= f;
        }
        let rem = if o.rem.is_constant() {
            self.rem.clone()
        } else {
            self.rem.div_exact(&o.rem).ok_or(ExactError::NotDivisible)?
        };
        Ok(FactoredForm { lead: &self.lead / &o.lead, exps, rem })
    }

    /// Integer power; negative exponents need a trivial remainder.
    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        if e < 0 && !self.rem.is_constant() {
            return Err(ExactError::NotDivisible);
        }
        if self.is_zero() {
            return if e > 0 { Ok(Self::zero()) } else { Err(ExactError::DivisionByZero) };
        }
        let mut exps = self.exps;
        for x in exps.iter_mut() {
            *x *= e;
        }
        let rem = if e > 0 { self.rem.pow(e as u32) } else { ZPoly::one() };
        Ok(FactoredForm { lead: rpow(&self.lead, e), exps, rem })
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut m = [0i64; 5];
        for i in 0..5 {
            m[i] = self.exps[i].min(o.exps[i]);
        }
        let lift = |f: &Self| {
            let mut p = f.rem.clone();
            for b in Basis::ALL {
                let d = f.exps[b.index()] - m[b.index()];
                let (a, c) = b.linear();
                p = mul_linear_pow(&p, a, c, d as u32);
            }
            p
        };
        let pa = lift(self);
        let pb = lift(o);
        let r = &o.lead / &self.lead;
        let sum = &pa.scale(r.denom()) + &pb.scale(r.numer());
        let lead = &self.lead / Rational::from_integer(r.denom().clone());
        Self::from_parts(lead, m, sum)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// d/dζ.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let active: Vec<Basis> = Basis::ALL.into_iter().filter(|b| self.exps[b.index()] != 0).collect();
        if active.is_empty() {
            return Self::from_parts(self.lead.clone(), [0; 5], self.rem.derivative());
        }
        // f = L·∏b^e·R  ⇒  f' = L·∏b^(e−1)·(R'·∏b + R·Σ e_i a_i ∏_{j≠i} b_j)
        let mut prod_all = ZPoly::one();
        for b in &active {
            let (a, c) = b.linear();
            prod_all = mul_linear_pow(&prod_all, a, c, 1);
        }
        let mut bracket = &self.rem.derivative() * &prod_all;
        for b in &active {
            let (a, c) = b.linear();
            let others = prod_all.div_linear(a, c).expect("factor present");
            let k = BigInt::from(self.exps[b.index()] * a);
            bracket = &bracket + &(&self.rem * &others).scale(&k);
        }
        let mut exps = self.exps;
        for b in &active {
            exps[b.index()] -= 1;
        }
        Self::from_parts(self.lead.clone(), exps, bracket)
    }

    /// δ = ψ·d/dζ with ψ = ζ(ζ+1)(ζ−1)(ζ+2)/(2(2ζ+1)²).
    pub fn delta(&self) -> Self {
        psi_factored().mul(&self.derivative())
    }

    /// Exact substitution without gcd: Λ ∪ {∞} is stable under both maps.
    pub fn substitute(&self, map: Substitution) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let [ez, ep1, em1, ep2, eh] = self.exps;
        match map {
            Substitution::Reciprocal => {
                // ζ→1/ζ: ζ+1→(ζ+1)/ζ, ζ−1→−(ζ−1)/ζ, ζ+2→(2ζ+1)/ζ, 2ζ+1→(ζ+2)/ζ
                let deg = self.rem.deg() as i64;
                let exps = [-(ez + ep1 + em1 + ep2 + eh + deg), ep1, em1, eh, ep2];
                let sign = if em1.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
                let (c, rem) = self.rem.reversed().primitive_signed();
                FactoredForm { lead: &self.lead * sign * Rational::from_integer(c), exps, rem }
            }
            Substitution::Reflection => {
                // ζ→−ζ−1: ζ→−(ζ+1), ζ+1→−ζ, ζ−1→−(ζ+2), ζ+2→−(ζ−1), 2ζ+1→−(2ζ+1)
                let exps = [ep1, ez, ep2, em1, eh];
                let total: i64 = self.exps.iter().sum();
                let sign = if total.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
                let (c, rem) = self.rem.reflect().primitive_signed();
                FactoredForm { lead: &self.lead * sign * Rational::from_integer(c), exps, rem }
            }
        }
    }

    /// Value at a rational point outside Λ.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let mut v = &self.lead * self.rem.eval(x);
        for b in Basis::ALL {
            let (a, c) = b.linear();
            let f = Rational::from_integer(BigInt::from(a)) * x + Rational::from_integer(BigInt::from(c));
            let e = self.exps[b.index()];
            if f.is_zero() {
                if e < 0 {
                    return None;
                }
                if e > 0 {
                    return Some(Rational::zero());
                }
                continue;
            }
            v *= rpow(&f, e);
        }
        Some(v)
    }
}

/// ψ in factored form.
pub fn psi_factored() -> FactoredForm {
    FactoredForm::monomial(Rational::new(BigInt::one(), BigInt::from(2)), [1, 1, 1, 1, -2])
}

impl fmt::Debug for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.lead.is_negative() {
            write!(f, "-{}", -&self.lead)?;
        } else {
            write!(f, "{}", self.lead)?;
        }
        let names = ["z", "(z+1)", "(z-1)", "(z+2)", "(2*z+1)"];
        for (i, e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "*{}", names[i])?,
                _ => write!(f, "*{}^{}", names[i], e)?,
            }
        }
        if !self.rem.is_constant() {
            write!(f, "*({})", self.rem)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{rat, rint};

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(c)
    }

    fn initial_value() -> RationalFunction {
        // −2ζ²(ζ−1)(ζ+1)²(2ζ+1)/(ζ+2)²
        let z = rf(&[0, 1]);
        let num = &(&(&(&z * &z) * &rf(&[-1, 1])) * &rf(&[1, 1]).pow(2)) * &rf(&[1, 2]);
        (&num / &rf(&[2, 1]).pow(2)).scale(&rint(-2))
    }

    #[test]
    fn factors_initial_value() {
        let f = FactoredForm::from_rational_function(&initial_value()).unwrap();
        assert_eq!(f.exponents(), &[2, 2, 1, -2, 1]);
        assert_eq!(f.lead(), &rint(-2));
        assert!(f.remainder().is_constant());
        assert_eq!(f.to_rational_function(), initial_value());
    }

    #[test]
    fn remainder_without_lambda_roots() {
        let q = rf(&[1, 1, 1]);
        let f = &(&q * &q) / &rf(&[1, 2]).pow(3);
        let ff = FactoredForm::from_rational_function(&f).unwrap();
        assert_eq!(ff.exponents(), &[0, 0, 0, 0, -3]);
        assert_eq!(ff.remainder(), &ZPoly::from_i64s(&[1, 2, 3, 2, 1]));
        assert_eq!(FactoredForm::from_rational_function(&RationalFunction::one()).unwrap(), FactoredForm::one());
    }

    #[test]
    fn arithmetic_matches_rational_functions() {
        let a = FactoredForm::from_rational_function(&initial_value()).unwrap();
        let b = FactoredForm::from_parts(rat(3, 5), [1, 0, -1, 2, 0], ZPoly::from_i64s(&[7, 0, 1]));
        let (ra, rb) = (a.to_rational_function(), b.to_rational_function());
        assert_eq!(a.add(&b).to_rational_function(), &ra + &rb);
        assert_eq!(a.sub(&b).to_rational_function(), &ra - &rb);
        assert_eq!(a.mul(&b).to_rational_function(), &ra * &rb);
        assert_eq!(a.derivative().to_rational_function(), ra.derivative());
        assert_eq!(b.delta().to_rational_function(), rb.delta());
        assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
        for s in [Substitution::Reciprocal, Substitution::Reflection] {
            assert_eq!(b.substitute(s).to_rational_function(), rb.substitute(s));
            assert_eq!(a.substitute(s).to_rational_function(), ra.substitute(s));
        }
    }

    #[test]
    fn pole_outside_lambda_is_rejected() {
        let f = &RationalFunction::one() / &rf(&[3, 1]);
        assert_eq!(FactoredForm::from_rational_function(&f), Err(ExactError::PoleOutsideLambda));
    }
}
