//! The finite phase group acting on the generators `u, v, τ0, …, τ4`, the
//! commutation of `t1, t3` with the translation lattice, and the dicyclic
//! relations satisfied by `t1, t3`.

use super::index::LIndex;
use crate::exactfield::RationalFunction;
use num_traits::Signed;
use std::fmt;
use std::ops::Mul;

/// Slots of the generators in multiplier vectors: `u, v, τ0, τ1, τ2, τ3, τ4`.
pub const GENERATORS: [&str; 7] = ["u", "v", "tau0", "tau1", "tau2", "tau3", "tau4"];

/// An automorphism multiplying each generator by a power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PhaseAutomorphism([u8; 7]);

impl PhaseAutomorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Exponents of `i`, reduced mod 4.
    pub fn from_exponents(e: [i64; 7]) -> Self {
        PhaseAutomorphism(e.map(|x| x.rem_euclid(4) as u8))
    }

    pub fn exponents(&self) -> [u8; 7] {
        self.0
    }

    /// The power of `i` multiplying `τ0`.
    pub fn tau0_exponent(&self) -> u8 {
        self.0[2]
    }

    pub fn pow(self, e: i64) -> Self {
        Self::from_exponents(self.0.map(|x| x as i64 * e))
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == [0; 7]
    }
}

impl Mul for PhaseAutomorphism {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        PhaseAutomorphism(std::array::from_fn(|i| (self.0[i] + o.0[i]) % 4))
    }
}

impl fmt::Display for PhaseAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = GENERATORS
            .iter()
            .zip(self.0)
            .map(|(g, e)| match e {
                0 => g.to_string(),
                1 => format!("i{g}"),
                2 => format!("-{g}"),
                _ => format!("-i{g}"),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The generators `ψ1..ψ4` (`Psi(j)`) and `χ1..χ4` (`Chi(j)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseGen {
    Psi(u8),
    Chi(u8),
}

impl PhaseGen {
    pub const ALL: [PhaseGen; 8] = [
        PhaseGen::Psi(1),
        PhaseGen::Psi(2),
        PhaseGen::Psi(3),
        PhaseGen::Psi(4),
        PhaseGen::Chi(1),
        PhaseGen::Chi(2),
        PhaseGen::Chi(3),
        PhaseGen::Chi(4),
    ];

    fn slot(self) -> usize {
        match self {
            PhaseGen::Psi(j) => j as usize - 1,
            PhaseGen::Chi(j) => j as usize + 3,
        }
    }

    pub fn action(self) -> PhaseAutomorphism {
        let e = match self {
            PhaseGen::Psi(1) => [2, 2, 3, 3, 0, 3, 3],
            PhaseGen::Psi(2) => [0, 0, 0, 2, 0, 2, 2],
            PhaseGen::Psi(3) => [0, 2, 3, 3, 0, 3, 3],
            PhaseGen::Psi(4) => [2, 0, 3, 3, 0, 3, 3],
            PhaseGen::Chi(1) => [0, 0, 0, 0, 0, 2, 2],
            PhaseGen::Chi(2) => [0, 0, 2, 2, 0, 2, 2],
            PhaseGen::Chi(3) => [0, 0, 0, 2, 0, 0, 2],
            PhaseGen::Chi(4) => [0, 0, 0, 2, 0, 2, 0],
            _ => panic!("generator index out of range"),
        };
        PhaseAutomorphism::from_exponents(e)
    }

    /// The correction `c` in `g T_k = T_k g c`.
    pub fn translation_defect(self, k: u8) -> Option<PhaseGen> {
        match self {
            PhaseGen::Psi(j) if j == 2 && k == 2 => None,
            PhaseGen::Psi(j) if j == k => Some(PhaseGen::Chi(j)),
            PhaseGen::Psi(j) if j == 2 || k == 2 => Some(PhaseGen::Chi(2)),
            PhaseGen::Psi(j) => Some(PhaseGen::Chi(8 - j - k)),
            PhaseGen::Chi(j) if j == k || j == 2 || k == 2 => None,
            PhaseGen::Chi(_) => Some(PhaseGen::Chi(2)),
        }
    }
}

/// A word `∏ g^e` in the commuting generators, kept as an exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PhaseWord([i64; 8]);

impl PhaseWord {
    pub fn exponent(&self, g: PhaseGen) -> i64 {
        self.0[g.slot()]
    }

    pub fn with(mut self, g: PhaseGen, e: i64) -> Self {
        self.0[g.slot()] += e;
        self
    }

    pub fn action(&self) -> PhaseAutomorphism {
        PhaseGen::ALL
            .iter()
            .fold(PhaseAutomorphism::identity(), |acc, g| acc * g.action().pow(self.exponent(*g)))
    }

    /// `T_k^{-1} w T_k`, using the commutation rules of each generator.
    pub fn conjugate_by_translation(&self, k: u8) -> Self {
        let mut out = *self;
        for g in PhaseGen::ALL {
            if let Some(c) = g.translation_defect(k) {
                out = out.with(c, self.exponent(g));
            }
        }
        out
    }
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// The word `X` appearing when `t1` or `t3` is moved past `T_1^{l1}⋯T_4^{l4}`.
pub fn phase_word(l: &LIndex) -> PhaseWord {
    let [l1, l2, l3, l4] = l.l();
    // (l3−l1)(l4−l1)(l4−l3) is always even
    let e2 = l2 * (l1 + l3 + l4) + (l3 - l1) * (l4 - l1) * (l4 - l3) / 2;
    PhaseWord::default()
        .with(PhaseGen::Psi(1), l1)
        .with(PhaseGen::Psi(2), l2)
        .with(PhaseGen::Psi(3), l3)
        .with(PhaseGen::Psi(4), l4)
        .with(PhaseGen::Chi(1), binom2(l1) + l3 * l4)
        .with(PhaseGen::Chi(3), binom2(l3) + l1 * l4)
        .with(PhaseGen::Chi(4), binom2(l4) + l1 * l3)
        .with(PhaseGen::Chi(2), e2)
}

pub fn phase_x(l: &LIndex) -> PhaseAutomorphism {
    phase_word(l).action()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    T1,
    T3,
}

/// `t_j(τ_l) = i^e τ_{l'}` from the closed form: returns `(e mod 4, l')`.
pub fn ttc_phase(l: &LIndex, which: Twist) -> (u8, LIndex) {
    let [l1, l2, l3, l4] = l.l();
    let e = 1 + (2 * l2 - 1) * (l1 + l3 + l4) + (l3 - l1) * (l4 - l1) * (l4 - l3);
    let target = match which {
        Twist::T1 => [l4, l2, l3, l1],
        Twist::T3 => [l1, l2, l4, l3],
    };
    (e.rem_euclid(4) as u8, LIndex::new(target))
}

/// The same phase obtained by composing `t_j(τ0) = iτ0` with the action of `X` on `τ0`.
pub fn phase_from_word(l: &LIndex) -> u8 {
    (1 + phase_x(l).tau0_exponent()) % 4
}

/// Checks `ψ_j^{-1} X(l + e_j) = T_j^{-1} X(l) T_j` on the multiplier level.
pub fn induction_step_holds(l: &LIndex, j: u8) -> bool {
    let mut shifted = l.l();
    shifted[j as usize - 1] += 1;
    let lhs = phase_word(&LIndex::new(shifted)).with(PhaseGen::Psi(j), -1);
    let rhs = phase_word(l).conjugate_by_translation(j);
    lhs.action() == rhs.action()
}

/// Image of a generator: `i^phase · coeff(q) · ∏ g_j^{exps_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImage {
    pub phase: u8,
    pub coeff: RationalFunction,
    pub exps: [i64; 7],
}

impl GeneratorImage {
    fn unit(slot: usize) -> Self {
        let mut exps = [0; 7];
        exps[slot] = 1;
        GeneratorImage { phase: 0, coeff: RationalFunction::one(), exps }
    }

    fn times(mut self, phase: u8, coeff: RationalFunction) -> Self {
        self.phase = (self.phase + phase) % 4;
        self.coeff = &self.coeff * &coeff;
        self.canonical()
    }

    /// Moves a negative leading coefficient into the phase.
    fn canonical(mut self) -> Self {
        if self.coeff.lead().is_negative() {
            self.coeff = -&self.coeff;
            self.phase = (self.phase + 2) % 4;
        }
        self
    }
}

/// An automorphism acting on `q` by a Möbius map and on each generator by a
/// monomial with a coefficient in `ℚ(q)` and a power of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAutomorphism {
    /// `q ↦ (aq + b)/(cq + d)`, normalised up to sign.
    q_map: (i64, i64, i64, i64),
    images: [GeneratorImage; 7],
}

impl MonomialAutomorphism {
    pub fn identity() -> Self {
        MonomialAutomorphism { q_map: (1, 0, 0, 1), images: std::array::from_fn(GeneratorImage::unit) }
    }

    /// `t1`: `q ↦ 1/q`, `v ↦ i/(uv)`, `τ0 ↦ iτ0`, `τ1 ↔ τ4`, `τ2 ↦ −qτ2`.
    pub fn t1() -> Self {
        let mut m = Self::identity();
        m.q_map = (0, 1, 1, 0);
        m.images[1] = GeneratorImage { phase: 1, coeff: RationalFunction::one(), exps: [-1, -1, 0, 0, 0, 0, 0] };
        m.images[2] = GeneratorImage::unit(2).times(1, RationalFunction::one());
        m.images[3] = GeneratorImage::unit(6);
        m.images[4] = GeneratorImage::unit(4).times(2, RationalFunction::zeta());
        m.images[6] = GeneratorImage::unit(3);
        m.normalised()
    }

    /// `t3`: `q ↦ 1 − q`, `u ↔ v`, `τ0 ↦ iτ0`, `τ3 ↔ τ4`.
    pub fn t3() -> Self {
        let mut m = Self::identity();
        m.q_map = (-1, 1, 0, 1);
        m.images[0] = GeneratorImage::unit(1);
        m.images[1] = GeneratorImage::unit(0);
        m.images[2] = GeneratorImage::unit(2).times(1, RationalFunction::one());
        m.images[5] = GeneratorImage::unit(6);
        m.images[6] = GeneratorImage::unit(5);
        m.normalised()
    }

    /// `σ`: `τ0 ↦ −τ0`.
    pub fn sigma() -> Self {
        let mut m = Self::identity();
        m.images[2] = GeneratorImage::unit(2).times(2, RationalFunction::one());
        m
    }

    pub fn from_phase(p: PhaseAutomorphism) -> Self {
        let mut m = Self::identity();
        for (slot, e) in p.exponents().into_iter().enumerate() {
            m.images[slot].phase = e;
        }
        m
    }

    fn normalised(mut self) -> Self {
        let (a, b, c, d) = self.q_map;
        let first = [a, b, c, d].into_iter().find(|x| *x != 0).unwrap_or(1);
        if first < 0 {
            self.q_map = (-a, -b, -c, -d);
        }
        self
    }

    fn apply_to(&self, g: &GeneratorImage) -> GeneratorImage {
        let (a, b, c, d) = self.q_map;
        let mut phase = g.phase as i64;
        let mut coeff = g.coeff.substitute_mobius(a, b, c, d);
        let mut exps = [0i64; 7];
        for (j, &e) in g.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let im = &self.images[j];
            phase += e * im.phase as i64;
            coeff = &coeff * &im.coeff.pow(e);
            for (x, y) in exps.iter_mut().zip(im.exps) {
                *x += e * y;
            }
        }
        GeneratorImage { phase: phase.rem_euclid(4) as u8, coeff, exps }.canonical()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a1, b1, c1, d1) = other.q_map;
        let (a2, b2, c2, d2) = self.q_map;
        // other(q) = m1(q); self(m1(q)) = m1(m2(q)), matrix M1·M2
        let q_map = (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2);
        let images = std::array::from_fn(|s| self.apply_to(&other.images[s]));
        MonomialAutomorphism { q_map, images }.normalised()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn image(&self, slot: usize) -> &GeneratorImage {
        &self.images[slot]
    }
}

/// Outcome of checking the dicyclic relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicyclicReport {
    pub t1_squared_is_sigma: bool,
    pub t3_squared_is_sigma: bool,
    pub t1t3_cubed_is_sigma: bool,
    pub sigma_squared_is_identity: bool,
    /// `a = t1 t3`, `x = t1`: `a⁶ = 1`, `x² = a³`, `axa = x`.
    pub presentation_holds: bool,
}

impl DicyclicReport {
    pub fn all(&self) -> bool {
        self.t1_squared_is_sigma
            && self.t3_squared_is_sigma
            && self.t1t3_cubed_is_sigma
            && self.sigma_squared_is_identity
            && self.presentation_holds
    }
}

pub fn dicyclic_relations() -> DicyclicReport {
    let (t1, t3, s) = (MonomialAutomorphism::t1(), MonomialAutomorphism::t3(), MonomialAutomorphism::sigma());
    let id = MonomialAutomorphism::identity();
    let a = t1.compose(&t3);
    DicyclicReport {
        t1_squared_is_sigma: t1.pow(2) == s,
        t3_squared_is_sigma: t3.pow(2) == s,
        t1t3_cubed_is_sigma: a.pow(3) == s,
        sigma_squared_is_identity: s.pow(2) == id,
        presentation_holds: a.pow(6) == id && t1.pow(2) == a.pow(3) && a.compose(&t1).compose(&a) == t1,
    }
}

/// Indices with `|l_i| ≤ r` where the closed-form phase disagrees with the
/// word in ψ/χ, or an inductive step fails.
pub fn phase_mismatches(r: i64) -> Vec<LIndex> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    let l = LIndex::new([a, b, c, d]);
                    let word_ok = phase_from_word(&l) == ttc_phase(&l, Twist::T1).0;
                    if !word_ok || !(1..=4).all(|j| induction_step_holds(&l, j)) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(a: [i64; 4]) -> LIndex {
        LIndex::new(a)
    }

    #[test]
    fn ttc_examples() {
        assert_eq!(ttc_phase(&l([0, 0, 0, 0]), Twist::T1), (1, l([0, 0, 0, 0])));
        assert_eq!(ttc_phase(&l([1, 0, 0, 0]), Twist::T1), (0, l([0, 0, 0, 1])));
        assert_eq!(ttc_phase(&l([1, 2, 3, 4]), Twist::T3).1, l([1, 2, 4, 3]));
    }

    #[test]
    fn generators_commute_and_chi_are_involutions() {
        for g in PhaseGen::ALL {
            if let PhaseGen::Chi(_) = g {
                assert!(g.action().pow(2).is_identity());
            }
            assert!(g.action().pow(4).is_identity());
            for h in PhaseGen::ALL {
                let a = MonomialAutomorphism::from_phase(g.action());
                let b = MonomialAutomorphism::from_phase(h.action());
                assert_eq!(a.compose(&b), b.compose(&a));
            }
        }
    }

    #[test]
    fn defects_follow_the_table() {
        assert_eq!(PhaseGen::Psi(2).translation_defect(2), None);
        assert_eq!(PhaseGen::Psi(3).translation_defect(3), Some(PhaseGen::Chi(3)));
        assert_eq!(PhaseGen::Psi(1).translation_defect(3), Some(PhaseGen::Chi(4)));
        assert_eq!(PhaseGen::Psi(4).translation_defect(1), Some(PhaseGen::Chi(3)));
        assert_eq!(PhaseGen::Psi(2).translation_defect(4), Some(PhaseGen::Chi(2)));
        assert_eq!(PhaseGen::Chi(1).translation_defect(3), Some(PhaseGen::Chi(2)));
        assert_eq!(PhaseGen::Chi(1).translation_defect(2), None);
    }

    #[test]
    fn word_and_closed_form_agree() {
        assert_eq!(phase_mismatches(3), vec![]);
    }

    #[test]
    fn dicyclic() {
        let r = dicyclic_relations();
        assert!(r.all(), "{r:?}");
    }

    #[test]
    fn t1_moves_q_and_tau2() {
        let t1 = MonomialAutomorphism::t1();
        let img = t1.pow(2);
        assert_eq!(img.image(4).coeff, RationalFunction::one());
        assert_eq!(img.image(1).exps, [0, 1, 0, 0, 0, 0, 0]);
    }
}
