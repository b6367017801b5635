//! Exact transformation tables: matrices of Γ0(3), their action on φ1..φ5
//! as monomial maps with root-of-unity constants, and the eta-level table
//! for the generators `T`, `U`.

use crate::cuspalg::UnitConst;
use crate::exactfield::{rat, rint, Rational};
use num_traits::Zero;
use std::fmt;

pub type Mat = [[i64; 2]; 2];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

pub fn mat_pow(a: &Mat, e: u32) -> Mat {
    (0..e).fold([[1, 0], [0, 1]], |acc, _| mat_mul(&acc, a))
}

pub fn det(a: &Mat) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}


pub const T: Mat = [[1, 1], [0, 1]];
pub const U: Mat = [[1, -1], [3, -2]];
/// A non-trivial element of K used for the invariance check.
pub const K_ELEMENT: Mat = [[13, 24], [72, 133]];

/// `(U T³)³`.
pub fn t1_matrix() -> Mat {
    mat_pow(&mat_mul(&U, &mat_pow(&T, 3)), 3)
}

/// `(T³ U)³`.
pub fn t3_matrix() -> Mat {
    mat_pow(&mat_mul(&mat_pow(&T, 3), &U), 3)
}

/// Membership in K: `a ≡ d ≡ ±1 (12)`, `b ≡ 0 (24)`, `c ≡ 0 (72)`.
pub fn in_k(m: &Mat) -> bool {
    let [[a, b], [c, d]] = *m;
    let pm1 = |x: i64| x.rem_euclid(12) == 1 || x.rem_euclid(12) == 11;
    det(m) == 1 && pm1(a) && a.rem_euclid(12) == d.rem_euclid(12) && b.rem_euclid(24) == 0 && c.rem_euclid(72) == 0
}

/// `unit · ∏ φ_k^{exps[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub unit: UnitConst,
    pub exps: [i64; 5],
}

impl PhiImage {
    pub fn new(unit: UnitConst, exps: [i64; 5]) -> Self {
        PhiImage { unit, exps }
    }
}

/// The map `φ_j ↦ images[j]`, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAction(pub [PhiImage; 5]);

fn unit(r: Rational, s: Rational) -> UnitConst {
    UnitConst::new(r, s, Rational::zero())
}

fn ph(n: i64, d: i64) -> UnitConst {
    UnitConst::phase(rat(n, d))
}

impl PhiAction {
    pub fn identity() -> Self {
        PhiAction(std::array::from_fn(|j| {
            let mut e = [0; 5];
            e[j] = 1;
            PhiImage::new(UnitConst::one(), e)
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PhiAction) -> PhiAction {
        PhiAction(std::array::from_fn(|j| {
            let a = &self.0[j];
            let mut unit = a.unit.clone();
            let mut exps = [0i64; 5];
            for (k, &e) in a.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let b = &other.0[k];
                unit = &unit * &b.unit.pow(&rint(e));
                for m in 0..5 {
                    exps[m] += e * b.exps[m];
                }
            }
            PhiImage::new(unit, exps)
        }))
    }

    /// Inverse, found as a power; every action here has finite order.
    pub fn inverse(&self) -> Option<PhiAction> {
        let id = PhiAction::identity();
        let mut p = self.clone();
        for _ in 0..4096 {
            let next = p.compose(self);
            if next == id {
                return Some(p);
            }
            p = next;
        }
        None
    }

    pub fn pow(&self, e: u32) -> PhiAction {
        (0..e).fold(PhiAction::identity(), |acc, _| acc.compose(self))
    }

    /// Action of a word in `T`, `U` (leftmost letter applied last).
    pub fn of_word(word: &str) -> PhiAction {
        word.chars().fold(PhiAction::identity(), |acc, ch| match ch {
            'T' => acc.compose(&cc2_t()),
            'U' => acc.compose(&cc2_u()),
            _ => panic!("unknown letter {ch}"),
        })
    }
}

impl fmt::Display for PhiAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, im) in self.0.iter().enumerate() {
            writeln!(f, "φ{} ↦ {} · φ^{:?}", j + 1, im.unit, im.exps)?;
        }
        Ok(())
    }
}

/// Row `T` of the table for Γ0(3) acting on φ1..φ5.
pub fn cc2_t() -> PhiAction {
    PhiAction([
        PhiImage::new(ph(-1, 12), [-1, -1, 0, 0, 0]),
        PhiImage::new(ph(1, 6), [0, 1, 0, 0, 0]),
        PhiImage::new(ph(1, 12), [0, 0, -1, -1, 3]),
        PhiImage::new(ph(1, 3), [0, 0, 0, 1, 0]),
        PhiImage::new(ph(1, 6), [0, 0, 0, 0, 1]),
    ])
}

/// Row `U`. The image of φ5 is φ5 itself: `[3]` and `[1]` pick up the same
/// factor `e^{−iπ/12}X` under `U`.
pub fn cc2_u() -> PhiAction {
    let mut a = cc2_u_printed();
    a.0[4] = PhiImage::new(UnitConst::one(), [0, 0, 0, 0, 1]);
    a
}

/// Row `U` with φ5 ↦ φ4 as typeset; kept to show that it is inconsistent.
pub fn cc2_u_printed() -> PhiAction {
    PhiAction([
        PhiImage::new(ph(-5, 12), [-1, -1, 0, 0, 0]),
        PhiImage::new(unit(rat(1, 3), rint(-1)), [1, 0, 0, 0, 0]),
        PhiImage::new(ph(1, 4), [0, 0, -1, -1, 3]),
        PhiImage::new(UnitConst::one(), [0, 0, 1, 0, 0]),
        PhiImage::new(UnitConst::one(), [0, 0, 0, 1, 0]),
    ])
}

/// Printed action of `t1`.
pub fn cc3_t1() -> PhiAction {
    PhiAction([
        PhiImage::new(UnitConst::one(), [1, 0, 0, 0, 0]),
        PhiImage::new(unit(rat(3, 4), rint(-1)), [-1, -1, 0, 0, 0]),
        PhiImage::new(ph(3, 2), [0, 0, 1, 0, 0]),
        PhiImage::new(ph(5, 4), [0, 0, -1, -1, 3]),
        PhiImage::new(ph(3, 2), [0, 0, 0, 0, 1]),
    ])
}

/// Printed action of `t3`.
pub fn cc3_t3() -> PhiAction {
    PhiAction([
        PhiImage::new(unit(rat(1, 2), rint(1)), [0, 1, 0, 0, 0]),
        PhiImage::new(unit(rat(3, 2), rint(-1)), [1, 0, 0, 0, 0]),
        PhiImage::new(ph(1, 1), [0, 0, 0, 1, 0]),
        PhiImage::new(UnitConst::one(), [0, 0, 1, 0, 0]),
        PhiImage::new(ph(3, 2), [0, 0, 0, 0, 1]),
    ])
}

/// The auxiliary automorphism: `φ3, φ4, φ5 ↦ −φ3, −φ4, −φ5`.
pub fn cc3_sigma() -> PhiAction {
    let mut s = PhiAction::identity();
    for j in 2..5 {
        s.0[j].unit = ph(1, 1);
    }
    s
}

/// Exact status of the Γ0(3) and Dic3 relations on the φ-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTableReport {
    pub u_cubed_matrix: bool,
    pub u_cubed_action: bool,
    pub t1_from_generators: bool,
    pub t3_from_generators: bool,
    pub t1_squared_is_sigma: bool,
    pub t3_squared_is_sigma: bool,
    pub t1t3_cubed_is_sigma: bool,
    pub sigma_squared_is_identity: bool,
    pub k_element_in_k: bool,
    pub k_element_acts_trivially: bool,
}

impl ExactTableReport {
    pub fn entries(&self) -> [(&'static str, bool); 10] {
        [
            ("U^3 = 1 (matrix)", self.u_cubed_matrix),
            ("U^3 = 1 (action)", self.u_cubed_action),
            ("cc3:t1 = (UT^3)^3", self.t1_from_generators),
            ("cc3:t3 = (T^3U)^3", self.t3_from_generators),
            ("dcr:t1^2 = σ", self.t1_squared_is_sigma),
            ("dcr:t3^2 = σ", self.t3_squared_is_sigma),
            ("dcr:(t1t3)^3 = σ", self.t1t3_cubed_is_sigma),
            ("dcr:σ^2 = 1", self.sigma_squared_is_identity),
            ("K:membership", self.k_element_in_k),
            ("K:trivial action", self.k_element_acts_trivially),
        ]
    }

    pub fn all(&self) -> bool {
        self.entries().iter().all(|e| e.1)
    }
}

pub fn exact_table_report() -> ExactTableReport {
    let t1 = cc3_t1();
    let t3 = cc3_t3();
    let sigma = cc3_sigma();
    let id = PhiAction::identity();
    let k = K_ELEMENT;
    let k_action = action_of_matrix(&k);
    ExactTableReport {
        u_cubed_matrix: mat_pow(&U, 3) == [[1, 0], [0, 1]],
        u_cubed_action: cc2_u().pow(3) == id,
        t1_from_generators: PhiAction::of_word("UTTT").pow(3) == t1,
        t3_from_generators: PhiAction::of_word("TTTU").pow(3) == t3,
        t1_squared_is_sigma: t1.pow(2) == sigma,
        t3_squared_is_sigma: t3.pow(2) == sigma,
        t1t3_cubed_is_sigma: t1.compose(&t3).pow(3) == sigma,
        sigma_squared_is_identity: sigma.pow(2) == id,
        k_element_in_k: in_k(&k),
        k_element_acts_trivially: k_action.as_ref() == Some(&id),
    }
}

/// The φ-action of a matrix in Γ0(3), obtained by factoring it into the
/// generators `T`, `U`.
pub fn action_of_matrix(m: &Mat) -> Option<PhiAction> {
    let letters = factor_gamma0_3(m)?;
    Some(letters.iter().fold(PhiAction::identity(), |acc, g| acc.compose(g)))
}

/// Factors `m` into `T^{±1}` and `V^{±1}` with `V = UT = [[1,0],[3,1]]`,
/// leftmost factor first. `None` outside Γ0(3).
fn factor_gamma0_3(m: &Mat) -> Option<Vec<PhiAction>> {
    let t = cc2_t();
    let v = cc2_u().compose(&t);
    let (t_inv, v_inv) = (t.inverse()?, v.inverse()?);
    let mut cur = *m;
    let mut out = Vec::new();
    let push = |out: &mut Vec<PhiAction>, k: i64, pos: &PhiAction, neg: &PhiAction| {
        let g = if k >= 0 { pos } else { neg };
        out.extend(std::iter::repeat_n(g.clone(), k.unsigned_abs() as usize));
    };
    while cur[1][0] != 0 {
        let [[a, b], [c, d]] = cur;
        if c.rem_euclid(3) != 0 {
            return None;
        }
        // cur = T^k · rest, rest = V^j · next
        let k = (a as f64 / c as f64).round() as i64;
        let (a1, b1) = (a - k * c, b - k * d);
        let j = (c as f64 / (3 * a1) as f64).round() as i64;
        push(&mut out, k, &t, &t_inv);
        push(&mut out, j, &v, &v_inv);
        cur = [[a1, b1], [c - 3 * j * a1, d - 3 * j * b1]];
    }
    let [[a, b], [_, d]] = cur;
    if a.abs() != 1 || d != a {
        return None;
    }
    push(&mut out, b * a, &t, &t_inv);
    Some(out)
}

/// `e^{iπ phase} · 2^{two} · X^{x} · ∏ η(s_k τ)^{exps[k]}` over the scales
/// `1/2, 1, 3/2, 2, 3, 6`, with `X = √(−i(3τ−2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaImage {
    pub phase: Rational,
    pub two: Rational,
    pub x: i64,
    pub exps: [i64; 6],
}

fn ei(phase: Rational, two: Rational, x: i64, exps: [i64; 6]) -> EtaImage {
    EtaImage { phase, two, x, exps }
}

/// Images of `[k/2](Tτ)` and `[k/2](Uτ)`, indexed like the eta scales.
pub fn mal_table() -> [[EtaImage; 6]; 2] {
    let z = Rational::zero;
    let h = rat(-1, 2);
    let a = [-1, 3, 0, -1, 0, 0];
    let b = [0, 1, 0, 0, 0, 0];
    let c = [0, 0, -1, 0, 3, -1];
    let d = [0, 0, 0, 1, 0, 0];
    let e = [0, 0, 0, 0, 1, 0];
    let f = [0, 0, 0, 0, 0, 1];
    let half = [1, 0, 0, 0, 0, 0];
    let three_half = [0, 0, 1, 0, 0, 0];
    [
        [
            ei(rat(1, 24), z(), 0, a),
            ei(rat(1, 12), z(), 0, b),
            ei(rat(1, 8), z(), 0, c),
            ei(rat(1, 6), z(), 0, d),
            ei(rat(1, 4), z(), 0, e),
            ei(rat(1, 2), z(), 0, f),
        ],
        [
            ei(rat(-7, 24), z(), 1, a),
            ei(rat(-1, 12), z(), 1, b),
            ei(rat(-1, 24), z(), 1, c),
            ei(rat(1, 12), h.clone(), 1, half),
            ei(rat(-1, 12), z(), 1, e),
            ei(rat(1, 12), h, 1, three_half),
        ],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!(t1_matrix(), [[55, 126], [189, 433]]);
        assert_eq!(t3_matrix(), [[622, -441], [189, -134]]);
        assert_eq!(det(&t1_matrix()), 1);
        assert!(in_k(&K_ELEMENT));
        assert!(!in_k(&t1_matrix()));
    }

    #[test]
    fn exact_relations() {
        let r = exact_table_report();
        for (name, ok) in r.entries() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn factoring_reproduces_known_words() {
        assert_eq!(action_of_matrix(&t1_matrix()), Some(cc3_t1()));
        assert_eq!(action_of_matrix(&t3_matrix()), Some(cc3_t3()));
        assert_eq!(action_of_matrix(&T), Some(cc2_t()));
        assert_eq!(action_of_matrix(&[[1, 0], [0, 1]]), Some(PhiAction::identity()));
    }

    #[test]
    fn printed_u_row_has_infinite_order() {
        let p = cc2_u_printed();
        let size = |a: &PhiAction| a.0.iter().flat_map(|im| im.exps).map(i64::abs).max().unwrap();
        assert_ne!(p.pow(3), PhiAction::identity());
        assert!(size(&p.pow(9)) > size(&p.pow(3)));
        assert_eq!(cc2_u().pow(3), PhiAction::identity());
    }

    #[test]
    fn compose_is_associative() {
        let (t, u) = (cc2_t(), cc2_u());
        assert_eq!(t.compose(&u).compose(&t), t.compose(&u.compose(&t)));
    }
}
