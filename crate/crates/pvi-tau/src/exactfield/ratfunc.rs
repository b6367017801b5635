//! Reduced rational functions of ζ over ℚ.

use super::modgcd::poly_gcd;
use super::rational::{rint, Polynomial, Rational};
use super::zpoly::ZPoly;
use super::ExactError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Where to measure an order: a finite rational point or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl Point {
    pub fn int(a: i64) -> Self {
        Point::Finite(rint(a))
    }
}

/// The two changes of variable used by the lattice symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Substitution {
    /// ζ ↦ 1/ζ
    Reciprocal,
    /// ζ ↦ −ζ−1
    Reflection,
}

impl Substitution {
    /// Matrix `(a, b, c, d)` of ζ ↦ (aζ + b)/(cζ + d).
    pub fn matrix(self) -> (i64, i64, i64, i64) {
        match self {
            Substitution::Reciprocal => (0, 1, 1, 0),
            Substitution::Reflection => (-1, -1, 0, 1),
        }
    }
}

/// `lead · num / den` with `num`, `den` primitive, positive leading
/// coefficients and coprime. Zero is stored as lead 0 over 1/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    lead: Rational,
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { lead: c, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rint(c))
    }

    /// The Hauptmodul ζ itself.
    pub fn zeta() -> Self {
        Self::from_zpoly(&ZPoly::x())
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Self::from_parts(Rational::one(), p.clone(), ZPoly::one())
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_zpoly(&ZPoly::from_i64s(c))
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (c, z) = p.to_zpoly();
        Self::from_parts(c, z, ZPoly::one())
    }

    /// Normalising constructor; panics on a zero denominator.
    pub fn from_parts(lead: Rational, num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if lead.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let (cn, n) = num.primitive_signed();
        let (cd, d) = den.primitive_signed();
        let lead = lead * Rational::new(cn, cd);
        let g = poly_gcd(&n, &d);
        let (n, d) = if g.is_constant() {
            (n, d)
        } else {
            (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
        };
        RationalFunction { lead, num: n, den: d }
    }

    /// Assembles from parts already known to be coprime and normalised.
    pub(crate) fn from_reduced(lead: Rational, num: ZPoly, den: ZPoly) -> Self {
        if lead.is_zero() {
            return Self::zero();
        }
        RationalFunction { lead, num, den }
    }

    pub fn lead(&self) -> &Rational {
        &self.lead
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.lead.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.lead.clone())
    }

    /// Returns the polynomial when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if !self.den.is_constant() {
            return None;
        }
        Some(Polynomial::from_zpoly(&self.num).scale(&self.lead))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RationalFunction { lead: self.lead.recip(), num: self.den.clone(), den: self.num.clone() })
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().expect("negative power of zero").pow(-e);
        }
        if self.is_zero() {
            return if e == 0 { Self::one() } else { Self::zero() };
        }
        let e32 = u32::try_from(e).expect("exponent too large");
        RationalFunction {
            lead: num_traits::pow(self.lead.clone(), e32 as usize),
            num: self.num.pow(e32),
            den: self.den.pow(e32),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RationalFunction { lead: &self.lead * k, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        if self.is_constant() {
            return Self::zero();
        }
        let n1 = &self.num.derivative() * &self.den;
        let n2 = &self.num * &self.den.derivative();
        Self::from_parts(self.lead.clone(), &n1 - &n2, &self.den * &self.den)
    }

    /// The derivation δ = ψ·d/dζ.
    pub fn delta(&self) -> Self {
        &psi() * &self.derivative()
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.lead * self.num.eval(x) / d)
    }

    /// Order at a point: `(ζ−a)^(−m) f` (or `ζ^m f` at ∞) is finite and nonzero.
    pub fn order_at(&self, a: &Point) -> Result<i64, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroFunction);
        }
        match a {
            Point::Infinity => Ok(self.den.deg() as i64 - self.num.deg() as i64),
            Point::Finite(a) => {
                let p = a.numer().clone();
                let q = a.denom().clone();
                Ok(multiplicity(&self.num, &q, &p) as i64 - multiplicity(&self.den, &q, &p) as i64)
            }
        }
    }

    pub fn substitute(&self, map: Substitution) -> Self {
        let (a, b, c, d) = map.matrix();
        self.substitute_mobius(a, b, c, d)
    }

    /// Exact composition with ζ ↦ (aζ + b)/(cζ + d).
    pub fn substitute_mobius(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg();
        let dd = self.den.deg();
        let n = self.num.compose_mobius(a, b, c, d, dn);
        let m = self.den.compose_mobius(a, b, c, d, dd);
        let lin = ZPoly::linear(d, c);
        let (n, m) = if dd >= dn {
            (&n * &lin.pow((dd - dn) as u32), m)
        } else {
            (n, &m * &lin.pow((dn - dd) as u32))
        };
        Self::from_parts(self.lead.clone(), n, m)
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // Henrici addition: only the common part of the denominators can cancel.
        let g = poly_gcd(&self.den, &o.den);
        let (b1, d1) = if g.is_constant() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap())
        };
        let r = &o.lead / &self.lead;
        let rn = r.numer();
        let rd = r.denom();
        let n = &(&self.num * &d1).scale(rd) + &(&o.num * &b1).scale(rn);
        if n.is_zero() {
            return Self::zero();
        }
        let lead = &self.lead / Rational::from_integer(rd.clone());
        let den = &self.den * &d1;
        if g.is_constant() {
            let (c, n) = n.primitive_signed();
            return Self::from_reduced(lead * Rational::from_integer(c), n, den);
        }
        Self::from_parts(lead, n, den)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut lead = &self.lead * &o.lead;
        let (c1, n) = (&n1 * &n2).primitive_signed();
        let (c2, d) = (&d1 * &d2).primitive_signed();
        lead *= Rational::new(c1, c2);
        Self::from_reduced(lead, n, d)
    }
}

fn multiplicity(p: &ZPoly, q: &BigInt, r: &BigInt) -> usize {
    // Multiplicity of the factor (qζ − r).
    let lin = ZPoly::new(vec![-r.clone(), q.clone()]);
    let mut cur = p.clone();
    let mut m = 0;
    while let Some(next) = cur.div_exact(&lin) {
        cur = next;
        m += 1;
        if cur.is_constant() {
            break;
        }
    }
    m
}

/// ψ = ζ(ζ+1)(ζ−1)(ζ+2) / (2(2ζ+1)²).
pub fn psi() -> RationalFunction {
    RationalFunction::from_reduced(
        Rational::new(BigInt::one(), BigInt::from(2)),
        ZPoly::from_i64s(&[0, -2, -1, 2, 1]),
        ZPoly::from_i64s(&[1, 4, 4]),
    )
}

/// t(ζ) = ζ(ζ+2)³/(2ζ+1)³.
pub fn t_of_zeta() -> RationalFunction {
    RationalFunction::from_reduced(
        Rational::one(),
        ZPoly::from_i64s(&[0, 8, 12, 6, 1]),
        ZPoly::from_i64s(&[1, 6, 12, 8]),
    )
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, o)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b));
forward_binop!(Sub, sub, |a, b| a.add_impl(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.recip().expect("division by zero rational function")));

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { lead: -&self.lead, num: self.num.clone(), den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let lead = if self.lead.is_negative() { format!("-{}", -&self.lead) } else { self.lead.to_string() };
        match (self.num.is_constant(), self.den.is_constant()) {
            (true, true) => write!(f, "{lead}"),
            (false, true) => write!(f, "{lead}*({})", self.num),
            (true, false) => write!(f, "{lead}/({})", self.den),
            (false, false) => write!(f, "{lead}*({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    fn z() -> RationalFunction {
        RationalFunction::zeta()
    }

    fn lin(a0: i64, a1: i64) -> RationalFunction {
        RationalFunction::from_i64s(&[a0, a1])
    }

    #[test]
    fn canonical_equality() {
        let a = &lin(1, 1) / &lin(2, 2);
        assert_eq!(a, RationalFunction::constant(rat(1, 2)));
        let b = &(&z() * &z()) / &z();
        assert_eq!(b, z());
        let c = &RationalFunction::one() - &(&z() / &z());
        assert!(c.is_zero());
    }

    #[test]
    fn delta_of_zeta_is_psi() {
        assert_eq!(z().delta(), psi());
        assert!(RationalFunction::one().delta().is_zero());
    }

    #[test]
    fn delta_of_t_is_t_times_t_minus_one() {
        let t = t_of_zeta();
        let expect = &t * &(&t - &RationalFunction::one());
        assert_eq!(t.delta(), expect);
    }

    #[test]
    fn orders() {
        let z2 = &z() * &z();
        assert_eq!(z2.order_at(&Point::int(0)).unwrap(), 2);
        let one_minus_t = &RationalFunction::one() - &t_of_zeta();
        assert_eq!(one_minus_t.order_at(&Point::int(-1)).unwrap(), 1);
        assert_eq!(one_minus_t.order_at(&Point::int(1)).unwrap(), 3);
        assert_eq!(one_minus_t.order_at(&Point::Finite(rat(-1, 2))).unwrap(), -3);
        assert_eq!(t_of_zeta().order_at(&Point::Infinity).unwrap(), -1);
        assert!(RationalFunction::zero().order_at(&Point::int(0)).is_err());
    }

    #[test]
    fn one_minus_t_closed_form() {
        // 1 − t = −(ζ+1)(ζ−1)³/(2ζ+1)³
        let one_minus_t = &RationalFunction::one() - &t_of_zeta();
        let cube = lin(-1, 1).pow(3);
        let expect = -(&(&lin(1, 1) * &cube) / &lin(1, 2).pow(3));
        assert_eq!(one_minus_t, expect);
    }

    #[test]
    fn substitutions_of_t() {
        let t = t_of_zeta();
        assert_eq!(t.substitute(Substitution::Reciprocal), t.recip().unwrap());
        assert_eq!(t.substitute(Substitution::Reflection), &RationalFunction::one() - &t);
        assert_eq!(z().substitute(Substitution::Reflection), lin(-1, -1));
    }
}
