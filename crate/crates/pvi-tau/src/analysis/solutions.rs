use super::painleve::{AlphaVector, SolutionPair};
use super::AnalysisError;
use crate::cuspalg::{prefactor, x_image, CuspMonomial, Generator, UnitConst};
use crate::exactfield::{Basis, FactoredForm, Point, RationalFunction};
use crate::taulattice::{y_product, LIndex, Lattice};

/// `X(τ_l) = mono · value`, where `mono` is the image of the prefactor and
/// `value = ∏Y_{k_j} · t^(k(l))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauImage {
    pub l: LIndex,
    pub mono: CuspMonomial,
    pub value: FactoredForm,
}

pub fn tau_image(lat: &Lattice, l: &LIndex, budget: usize) -> Result<TauImage, AnalysisError> {
    let k = l.to_k();
    let entry = lat.compute(&k, budget)?;
    Ok(TauImage { l: *l, mono: prefactor(l)?, value: entry.value.scale(&y_product(&k)) })
}

fn shifted(l: &LIndex, d: [i64; 4]) -> LIndex {
    let a = l.l();
    LIndex::new(std::array::from_fn(|i| a[i] + d[i]))
}

/// `unit · ∏ num / ∏ den`, requiring all fractional parts to cancel.
fn assemble(l: &LIndex, unit: CuspMonomial, num: &[TauImage], den: &[TauImage]) -> Result<RationalFunction, AnalysisError> {
    let mut mono = unit;
    let mut top = FactoredForm::one();
    let mut bottom = FactoredForm::one();
    for t in num {
        mono = &mono * &t.mono;
        top = top.mul(&t.value);
    }
    for t in den {
        mono = &mono / &t.mono;
        bottom = bottom.mul(&t.value);
    }
    let m = mono
        .to_rational_function()
        .map_err(|e| AnalysisError::NonRationalAssembly { l: *l, reason: e.to_string() })?;
    let ratio = &top.to_rational_function() / &bottom.to_rational_function();
    Ok(&m * &ratio)
}

fn sign(e: i64) -> UnitConst {
    UnitConst::from_integer(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `T(q) = (−1)^{l3+l4} i u v² τ_{l+e4} τ_{l+e2−e4} / (τ_{l+e1} τ_{l−e1+e2})`, specialised.
pub fn q_of_l(lat: &Lattice, l: &LIndex, budget: usize) -> Result<RationalFunction, AnalysisError> {
    let [_, _, l3, l4] = l.l();
    let tau = |d| tau_image(lat, &shifted(l, d), budget);
    let unit = CuspMonomial::from_unit(&sign(l3 + l4) * &UnitConst::i_pow(1));
    let unit = &(&unit * &x_image(Generator::U)) * &x_image(Generator::V).pow(2);
    assemble(l, unit, &[tau([0, 0, 0, 1])?, tau([0, 1, 0, -1])?], &[tau([1, 0, 0, 0])?, tau([-1, 1, 0, 0])?])
}

/// `T(p) = −τ_{l+e1} τ_{l−e1+e2} τ_{l−e2+e3+e4} / (u²v² τ_l τ_{l+e3} τ_{l+e4})`, specialised.
pub fn p_of_l(lat: &Lattice, l: &LIndex, budget: usize) -> Result<RationalFunction, AnalysisError> {
    let tau = |d| tau_image(lat, &shifted(l, d), budget);
    let uv = &x_image(Generator::U) * &x_image(Generator::V);
    let unit = &CuspMonomial::from_unit(UnitConst::from_integer(-1)) / &uv.pow(2);
    assemble(
        l,
        unit,
        &[tau([1, 0, 0, 0])?, tau([-1, 1, 0, 0])?, tau([0, -1, 1, 1])?],
        &[tau([0, 0, 0, 0])?, tau([0, 0, 1, 0])?, tau([0, 0, 0, 1])?],
    )
}

pub fn solution_pair(lat: &Lattice, l: &LIndex, budget: usize) -> Result<SolutionPair, AnalysisError> {
    Ok(SolutionPair { q: q_of_l(lat, l, budget)?, p: p_of_l(lat, l, budget)?, alphas: AlphaVector::at(l) })
}

/// Outcome of comparing `q_l` with its predicted behaviour at the cusps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub l: LIndex,
    /// Failing checks, each naming the cusp.
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn chi(k: i64) -> i64 {
    k.rem_euclid(2)
}

fn delta0(x: i64) -> i64 {
    i64::from(x == 0)
}

/// Exponents of `q_l` at `0, −2, −1/2` and of `q_l − 1` at `−1, 1, −1/2`,
/// the absence of other cusp factors, and the order at infinity.
///
/// The order at infinity is compared as `−order_at(q, ∞)`: with the
/// convention used throughout (`ζ^o f` bounded), the seed has order −1.
pub fn structure_check(q: &RationalFunction, l: &LIndex) -> Result<StructureReport, AnalysisError> {
    let [l0, l1, _, l3, l4] = l.full();
    let mut violations = Vec::new();
    let qm1 = q - &RationalFunction::one();
    let den = -(1 + chi(l3 + l4));
    let want_q = [
        (Basis::Z, 1 + l0.abs() * delta0(l4)),
        (Basis::ZPlus1, 0),
        (Basis::ZMinus1, 0),
        (Basis::ZPlus2, 1 + chi(l1 + l3)),
        (Basis::TwoZPlus1, den),
    ];
    let want_q1 = [
        (Basis::Z, 0),
        (Basis::ZPlus1, 1 + l0.abs() * delta0(l3)),
        (Basis::ZMinus1, 1 + chi(l1 + l4)),
        (Basis::ZPlus2, 0),
        (Basis::TwoZPlus1, den),
    ];
    for (name, f, want) in [("q", q, want_q), ("q-1", &qm1, want_q1)] {
        for (b, e) in want {
            let got = f.order_at(&Point::Finite(b.cusp()))?;
            if got != e {
                violations.push(format!("{name} at {}: exponent {got}, expected {e}", b.label()));
            }
        }
    }
    let o = -q.order_at(&Point::Infinity)?;
    let want = 1 + l0.abs() * delta0(l1);
    if o != want {
        violations.push(format!("q at infinity: order {o}, expected {want}"));
    }
    Ok(StructureReport { l: *l, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_BUDGET;

    #[test]
    fn seed_reconstruction() {
        let lat = Lattice::new();
        let o = LIndex::new([0, 0, 0, 0]);
        let s = SolutionPair::seed();
        assert_eq!(q_of_l(&lat, &o, DEFAULT_BUDGET).unwrap(), s.q);
        assert_eq!(p_of_l(&lat, &o, DEFAULT_BUDGET).unwrap(), s.p);
        assert!(structure_check(&s.q, &o).unwrap().passed());
    }

    #[test]
    fn neighbour_structure() {
        let lat = Lattice::new();
        for l in [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, -1]] {
            let l = LIndex::new(l);
            let q = q_of_l(&lat, &l, DEFAULT_BUDGET).unwrap();
            let r = structure_check(&q, &l).unwrap();
            assert!(r.passed(), "{l}: {:?}", r.violations);
        }
    }
}
