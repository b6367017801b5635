//! Monomials with fractional exponents in the cusp basis {ζ, ζ+1, ζ−1, ζ+2, 2ζ+1},
//! the images of u, v, τ0..τ4 under the specialisation X, and the lattice
//! prefactor φ_l.

use crate::exactfield::{psi_factored, rat, rint, rpow, Basis, FactoredForm, Rational, RationalFunction};
use crate::taulattice::LIndex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Div, Mul};
use std::sync::OnceLock;

mod identities;
pub use identities::{identity_suite, prefactor_checks, sh_checks, uvd_checks, xti_checks, IdentityCheck};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CuspError {
    #[error("cusp exponent matrix is singular")]
    SingularBasis,
    #[error("prefactor exponent is not an integer")]
    NonIntegerExponent,
    #[error("monomial is not a rational function: {0}")]
    NotRational(String),
}

/// `e^{iπ r} · 2^s · 3^u` with `r ∈ [0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitConst {
    r: Rational,
    s: Rational,
    u: Rational,
}

fn mod2(r: Rational) -> Rational {
    let two = rint(2);
    let q = (&r / &two).floor();
    r - q * two
}

impl UnitConst {
    pub fn new(r: Rational, s: Rational, u: Rational) -> Self {
        UnitConst { r: mod2(r), s, u }
    }

    pub fn one() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `e^{iπ r}`.
    pub fn phase(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero())
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Self::phase(rat(k, 2))
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    /// Principal-branch image of a nonzero integer of the form ±2^a 3^b.
    pub fn from_integer(c: i64) -> Self {
        assert!(c != 0);
        let r = if c < 0 { Rational::one() } else { Rational::zero() };
        let mut c = c.abs();
        let (mut s, mut u) = (0, 0);
        while c % 2 == 0 {
            c /= 2;
            s += 1;
        }
        while c % 3 == 0 {
            c /= 3;
            u += 1;
        }
        assert_eq!(c, 1, "constant outside the group generated by −1, 2, 3");
        Self::new(r, rint(s), rint(u))
    }

    pub fn pow(&self, e: &Rational) -> Self {
        Self::new(&self.r * e, &self.s * e, &self.u * e)
    }

    pub fn inv(&self) -> Self {
        self.pow(&rint(-1))
    }

    pub fn is_rational(&self) -> bool {
        (self.r.is_zero() || self.r.is_one()) && self.s.is_integer() && self.u.is_integer()
    }

    /// The value when rational.
    pub fn value(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let sign = if self.r.is_one() { -Rational::one() } else { Rational::one() };
        let s = self.s.to_integer().to_i64()?;
        let u = self.u.to_integer().to_i64()?;
        Some(sign * rpow(&rint(2), s) * rpow(&rint(3), u))
    }

    /// Complex value `(re, im)` in double precision.
    pub fn to_f64(&self) -> (f64, f64) {
        let f = |q: &Rational| q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
        let m = 2f64.powf(f(&self.s)) * 3f64.powf(f(&self.u));
        let a = std::f64::consts::PI * f(&self.r);
        (m * a.cos(), m * a.sin())
    }
}

impl Mul for &UnitConst {
    type Output = UnitConst;
    fn mul(self, o: &UnitConst) -> UnitConst {
        UnitConst::new(&self.r + &o.r, &self.s + &o.s, &self.u + &o.u)
    }
}

impl fmt::Display for UnitConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{})·2^({})·3^({})", self.r, self.s, self.u)
    }
}

/// `unit · ∏ φ_j^{e_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMonomial {
    pub unit: UnitConst,
    pub exponents: [Rational; 5],
}

impl PhiMonomial {
    pub fn new(unit: UnitConst, exponents: [i64; 5]) -> Self {
        PhiMonomial { unit, exponents: exponents.map(rint) }
    }
}

/// `unit · ζ^{e0} (ζ+1)^{e1} (ζ−1)^{e2} (ζ+2)^{e3} (2ζ+1)^{e4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuspMonomial {
    unit: UnitConst,
    exps: [Rational; 5],
}

impl CuspMonomial {
    pub fn new(unit: UnitConst, exps: [Rational; 5]) -> Self {
        CuspMonomial { unit, exps }
    }

    pub fn one() -> Self {
        Self::new(UnitConst::one(), std::array::from_fn(|_| Rational::zero()))
    }

    pub fn from_unit(unit: UnitConst) -> Self {
        Self::new(unit, std::array::from_fn(|_| Rational::zero()))
    }

    pub fn unit(&self) -> &UnitConst {
        &self.unit
    }

    pub fn exponents(&self) -> &[Rational; 5] {
        &self.exps
    }

    pub fn exponent(&self, b: Basis) -> &Rational {
        &self.exps[b.index()]
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = rint(e);
        Self::new(self.unit.pow(&k), std::array::from_fn(|i| &self.exps[i] * &k))
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_rational_function(&self) -> bool {
        self.unit.is_rational() && self.exps.iter().all(|e| e.is_integer())
    }

    pub fn to_factored(&self) -> Result<FactoredForm, CuspError> {
        let lead = self.unit.value().ok_or_else(|| CuspError::NotRational(self.to_string()))?;
        if !self.exps.iter().all(|e| e.is_integer()) {
            return Err(CuspError::NotRational(self.to_string()));
        }
        let e = std::array::from_fn(|i| self.exps[i].to_integer().to_i64().expect("small exponent"));
        Ok(FactoredForm::monomial(lead, e))
    }

    pub fn to_rational_function(&self) -> Result<RationalFunction, CuspError> {
        Ok(self.to_factored()?.to_rational_function())
    }

    /// `δ(m)/m = Σ e_a · ψ · b_a′ / b_a`.
    pub fn log_delta_factored(&self) -> FactoredForm {
        let psi = psi_factored();
        let mut acc = FactoredForm::zero();
        for b in Basis::ALL {
            let e = &self.exps[b.index()];
            if e.is_zero() {
                continue;
            }
            let (a, _) = b.linear();
            let mut ex = [0i64; 5];
            ex[b.index()] = -1;
            let term = psi.mul(&FactoredForm::monomial(e * rint(a), ex));
            acc = acc.add(&term);
        }
        acc
    }

    pub fn log_delta(&self) -> RationalFunction {
        self.log_delta_factored().to_rational_function()
    }
}

pub fn log_delta(m: &CuspMonomial) -> RationalFunction {
    m.log_delta()
}

impl Mul for &CuspMonomial {
    type Output = CuspMonomial;
    fn mul(self, o: &CuspMonomial) -> CuspMonomial {
        CuspMonomial::new(&self.unit * &o.unit, std::array::from_fn(|i| &self.exps[i] + &o.exps[i]))
    }
}

impl Mul for CuspMonomial {
    type Output = CuspMonomial;
    fn mul(self, o: CuspMonomial) -> CuspMonomial {
        &self * &o
    }
}

impl Div for &CuspMonomial {
    type Output = CuspMonomial;
    fn div(self, o: &CuspMonomial) -> CuspMonomial {
        self * &o.inv()
    }
}

impl fmt::Display for CuspMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for b in Basis::ALL {
            let e = &self.exps[b.index()];
            if !e.is_zero() {
                write!(f, "·[{}]^({})", b.label(), e)?;
            }
        }
        Ok(())
    }
}

/// Rows: φ-exponents of the relations `φ^{row_a} = basis_a / const_a`.
const ZPL_ROWS: [[i64; 5]; 5] = [
    [1, 2, -1, -2, 3],
    [2, 1, -2, -1, 3],
    [2, 1, 2, -1, 1],
    [1, 2, -1, 2, 1],
    [0, 0, -4, -4, 10],
];
const ZPL_CONST: [i64; 5] = [-2, -1, -3, 6, -3];

fn invert5(m: [[i64; 5]; 5]) -> Result<[[Rational; 5]; 5], CuspError> {
    let mut a: Vec<Vec<Rational>> = (0..5)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].iter().map(|&x| rint(x)).collect();
            row.extend((0..5).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..5 {
        let p = (c..5).find(|&r| !a[r][c].is_zero()).ok_or(CuspError::SingularBasis)?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..5 {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..10 {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| a[i][5 + j].clone())))
}

fn zpl_inverse() -> &'static [[Rational; 5]; 5] {
    static INV: OnceLock<[[Rational; 5]; 5]> = OnceLock::new();
    INV.get_or_init(|| invert5(ZPL_ROWS).expect("cusp exponent matrix must be invertible"))
}

/// Checks the basis change once; exposed so callers can fail early.
pub fn check_basis() -> Result<(), CuspError> {
    invert5(ZPL_ROWS).map(|_| ())
}

/// Rewrites a product of φ's as a cusp monomial, taking principal branches
/// for fractional powers of the negative constants.
pub fn phi_to_cusp(m: &PhiMonomial) -> CuspMonomial {
    let inv = zpl_inverse();
    let x: [Rational; 5] =
        std::array::from_fn(|a| (0..5).map(|j| &m.exponents[j] * &inv[j][a]).fold(Rational::zero(), |s, t| s + t));
    let mut unit = m.unit.clone();
    for a in 0..5 {
        unit = &unit * &UnitConst::from_integer(ZPL_CONST[a]).pow(&-&x[a]);
    }
    CuspMonomial::new(unit, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    U,
    V,
    Tau(u8),
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::U,
        Generator::V,
        Generator::Tau(0),
        Generator::Tau(1),
        Generator::Tau(2),
        Generator::Tau(3),
        Generator::Tau(4),
    ];

    /// The image under X as an expression in φ1..φ5.
    pub fn phi_form(self) -> PhiMonomial {
        let unit = |r: (i64, i64), s: (i64, i64)| UnitConst::new(rat(r.0, r.1), rat(s.0, s.1), Rational::zero());
        match self {
            Generator::U => PhiMonomial::new(unit((0, 1), (-2, 3)), [2, 0, 4, 0, -4]),
            Generator::V => PhiMonomial::new(unit((1, 1), (4, 3)), [0, 2, 0, 4, -4]),
            Generator::Tau(0) => PhiMonomial::new(UnitConst::one(), [0, 0, 0, 0, -1]),
            Generator::Tau(1) => PhiMonomial::new(unit((1, 1), (0, 1)), [0, 0, 1, 1, -2]),
            Generator::Tau(2) => PhiMonomial::new(unit((1, 2), (-2, 3)), [-2, -2, -2, -2, 4]),
            Generator::Tau(3) => PhiMonomial::new(unit((1, 4), (0, 1)), [0, 0, -1, 0, 1]),
            Generator::Tau(4) => PhiMonomial::new(unit((3, 4), (0, 1)), [0, 0, 0, -1, 1]),
            Generator::Tau(j) => panic!("no generator τ{j}"),
        }
    }
}

pub fn x_image(g: Generator) -> CuspMonomial {
    static CACHE: OnceLock<Vec<CuspMonomial>> = OnceLock::new();
    let all = CACHE.get_or_init(|| Generator::ALL.iter().map(|g| phi_to_cusp(&g.phi_form())).collect());
    let idx = Generator::ALL.iter().position(|h| *h == g).expect("known generator");
    all[idx].clone()
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn binom3(x: i64) -> i64 {
    x * (x - 1) * (x - 2) / 6
}

fn half_exact(n: i64) -> Result<i64, CuspError> {
    if n.is_odd() {
        Err(CuspError::NonIntegerExponent)
    } else {
        Ok(n / 2)
    }
}

/// Exact image of the normalising factor φ_l.
pub fn prefactor(l: &LIndex) -> Result<CuspMonomial, CuspError> {
    let [l0, l1, l2, l3, l4] = l.full();
    let sgn = binom3(l1 + 1) + binom3(l3 + 1) + binom3(l4 + 1) + (binom2(l3 + 1) + l1 * l3 + l2) * l4;
    let ip = binom2(l3 + 1) + binom2(l4 + 1) - l1 * l1 * l3 + l1 * l4 * l4 + l2 + l3 + l4;
    let p2 = l0 * (l0 - 1) + l1 * l1 + l3 * l3 + l4 * l4;
    let unit = UnitConst::new(rint(sgn.rem_euclid(2)) + rat(ip, 2), rint(-p2), Rational::zero());
    let exps = [
        l4 * l4 - l0 * (l0 - 1) - (l0 + l2) * (l2 + l4),
        l3 * l3 - l0 * (l0 - 1) - (l0 + l2) * (l2 + l3),
        (l0 + l2) * (l1 + l4) - (l2 + l3) * (l2 + l3) - l3,
        -3 * l2 * (l0 + l2 + l4) - (l0 + l4) * (l4 + 1),
        -l0 * l0 - l1 * (l0 + l1 + 3 * l2 + 1) - l2,
    ];
    let eu = half_exact((l1 - l3) * (l1 + l3 + 2 * l4 - 1))? + 2 * l2 * (l0 + l2);
    let ev = half_exact((l1 - l4) * (l1 + l4 + 2 * l3 - 1))? + 2 * l2 * (l0 + l2);
    let mut m = CuspMonomial::new(unit, exps.map(rint));
    for (g, e) in [
        (Generator::U, eu),
        (Generator::V, ev),
        (Generator::Tau(0), l0 + 1),
        (Generator::Tau(1), l1),
        (Generator::Tau(2), l2),
        (Generator::Tau(3), l3),
        (Generator::Tau(4), l4),
    ] {
        if e != 0 {
            m = &m * &x_image(g).pow(e);
        }
    }
    Ok(m)
}

/// Closed-form cusp exponents of φ_l (basis order ζ, ζ+1, ζ−1, ζ+2, 2ζ+1).
pub fn pph(l: &LIndex) -> [Rational; 5] {
    let [l0, l1, _, l3, l4] = l.full();
    let q = |n: i64| Rational::new(BigInt::from(n), BigInt::from(12));
    [
        q(-10 * l0 * l0 - l1 * l1 - l3 * l3 + 14 * l4 * l4 - 6 * l0 * l4 + 16 * l0 + 6 * l4 + 2),
        q(-10 * l0 * l0 - l1 * l1 + 14 * l3 * l3 - l4 * l4 - 6 * l0 * l3 + 16 * l0 + 6 * l3 + 2),
        q(-6 * l0 * l0 - 3 * l1 * l1 - 6 * l3 * l3 - 3 * l4 * l4 + 6 * l0 * l3 - 6 * l3 - 2),
        q(6 * l0 * l0 - 3 * l1 * l1 - 3 * l3 * l3 - 6 * l4 * l4 + 6 * l0 * l4 - 12 * l0 - 6 * l4 - 2),
        q(-6 * l0 * l0 - 6 * l1 * l1 - 3 * l3 * l3 - 3 * l4 * l4 + 6 * l0 * l1 - 6 * l1 - 2),
    ]
}

/// Log-derivative of φ_l in closed form, as a function of `(l0, l1, l3, l4)`.
pub fn dpn(l0: i64, l1: i64, l3: i64, l4: i64) -> RationalFunction {
    use crate::exactfield::ZPoly;
    let p = |c: &[i64]| ZPoly::from_i64s(c);
    let sq = |x: i64| BigInt::from(x * x);
    let k = |x: i64| BigInt::from(x);
    let m1 = l0 - 1;
    let mut num = p(&[-10, -38, 6, 70, 26]).scale(&-sq(l0));
    num = &num + &p(&[-1, -14, 0, 28, 14]).scale(&-sq(l1));
    num = &num + &p(&[1, -10, -36, -10, 1]).scale(&sq(l3));
    num = &num + &p(&[-14, -28, 0, 14, 1]).scale(&sq(l4));
    // 6ζ(ζ+1)(ζ−1)(ζ+2), 6ζ(ζ+2)(2ζ+1), −6(ζ+1)(ζ−1)(2ζ+1)
    num = &num + &p(&[0, -12, -6, 12, 6]).scale(&k(l1 * m1));
    num = &num + &p(&[0, 12, 30, 12]).scale(&k(l3 * m1));
    num = &num + &p(&[6, 12, -6, -12]).scale(&k(l4 * m1));
    // 2(ζ−1)(2ζ+1)(5ζ²+17ζ+8)
    num = &num + &p(&[-16, -50, -12, 58, 20]).scale(&k(l0));
    // −2(ζ²+ζ+1)²
    num = &num + &p(&[-2, -4, -6, -4, -2]);
    let den = p(&[1, 2]).pow(3).scale(&k(12));
    RationalFunction::from_zpoly(&num) / RationalFunction::from_zpoly(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(c)
    }

    fn twelfths(v: [i64; 5]) -> [Rational; 5] {
        v.map(|x| rat(x, 12))
    }

    #[test]
    fn basis_is_invertible() {
        assert!(check_basis().is_ok());
    }

    #[test]
    fn phi_to_cusp_examples() {
        let m = phi_to_cusp(&PhiMonomial::new(UnitConst::one(), [1, 2, -1, -2, 3]));
        assert_eq!(m.to_rational_function().unwrap(), rf(&[0, 1]).scale(&rat(-1, 2)));
        assert_eq!(phi_to_cusp(&PhiMonomial::new(UnitConst::one(), [0; 5])), CuspMonomial::one());
        let m = phi_to_cusp(&PhiMonomial::new(UnitConst::one(), [0, 0, 0, 0, -6]));
        let want = &(&rf(&[0, 1]) * &rf(&[1, 1])).scale(&rint(27)) / &(&(&rf(&[-1, 1]) * &rf(&[2, 1])) * &rf(&[1, 2]));
        assert_eq!(m.to_rational_function().unwrap(), want);
    }

    #[test]
    fn x_images_match_fractional_exponents() {
        let expect = [
            (Generator::U, [-2, 4, 12, -6, -6]),
            (Generator::V, [4, -2, -6, 12, -6]),
            (Generator::Tau(0), [2, 2, -2, -2, -2]),
            (Generator::Tau(1), [-1, -1, 1, 1, -2]),
            (Generator::Tau(2), [-4, -4, -4, -4, 8]),
            (Generator::Tau(3), [-1, 2, -2, 1, 1]),
            (Generator::Tau(4), [2, -1, 1, -2, 1]),
        ];
        for (g, e) in expect {
            assert_eq!(x_image(g).exponents(), &twelfths(e), "{g:?}");
        }
    }

    #[test]
    fn prefactor_at_origin() {
        let p = prefactor(&LIndex::new([0; 4])).unwrap();
        let want = phi_to_cusp(&PhiMonomial::new(UnitConst::one(), [0, 0, 0, 0, -1]));
        assert_eq!(p.exponents(), want.exponents());
        let l = LIndex::new([1, 0, 0, 0]);
        assert_eq!(l.l0(), -1);
        assert_eq!(prefactor(&l).unwrap().exponents(), &pph(&l));
        // φ5⁻⁶ carries 3³
        assert_eq!(p.unit().u(), &rat(1, 2));
    }
}
