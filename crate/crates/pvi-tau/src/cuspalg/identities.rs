//! Exact identities among the images of u, v, τ0..τ4 and the prefactors.

use super::{dpn, log_delta, pph, prefactor, x_image, CuspMonomial, Generator, UnitConst};
use crate::exactfield::{rat, rint, t_of_zeta, RationalFunction};
use crate::taulattice::LIndex;

/// One named identity and whether it holds exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn rf(c: &[i64]) -> RationalFunction {
    RationalFunction::from_i64s(c)
}

fn g(h: Generator, e: i64) -> CuspMonomial {
    x_image(h).pow(e)
}

fn rational(m: &CuspMonomial) -> Option<RationalFunction> {
    m.to_rational_function().ok()
}

fn push(out: &mut Vec<IdentityCheck>, name: impl Into<String>, holds: bool) {
    out.push(IdentityCheck { name: name.into(), holds });
}

/// `t = u²v⁴` and `1 − t = u⁴v²`.
pub fn uvd_checks() -> Vec<IdentityCheck> {
    let (u, v) = (Generator::U, Generator::V);
    let t = t_of_zeta();
    let mut out = Vec::new();
    push(&mut out, "uvd: t = u²v⁴", rational(&(&g(u, 2) * &g(v, 4))) == Some(t.clone()));
    push(&mut out, "uvd: 1−t = u⁴v²", rational(&(&g(u, 4) * &g(v, 2))) == Some(&RationalFunction::one() - &t));
    out
}

/// The four combinations of generators that reduce to 1.
pub fn xti_checks() -> Vec<IdentityCheck> {
    let (u, v) = (Generator::U, Generator::V);
    let (t0, t1, t2, t3, t4) =
        (Generator::Tau(0), Generator::Tau(1), Generator::Tau(2), Generator::Tau(3), Generator::Tau(4));
    let zeta = rf(&[0, 1]);
    let quartic = &(&(&zeta * &rf(&[1, 1])) * &rf(&[-1, 1])) * &rf(&[2, 1]);
    let h3 = rf(&[1, 2]).pow(3);
    let one = RationalFunction::one();

    let m1 = &(&(&(&g(u, 2) * &g(v, 2)) * &g(t0, 2)) * &g(t2, -1)) * &CuspMonomial::from_unit(UnitConst::i_pow(1));
    let f1 = (&h3 / &quartic).scale(&rat(1, 3));
    let m2 = &(&(&g(t1, 2) * &g(u, -1)) * &g(v, -1)) * &g(t2, -1);
    let m2 = &m2 * &CuspMonomial::from_unit(UnitConst::i_pow(3));
    let m3 = &(&g(u, 1) * &g(t3, 2)) * &g(t2, -1);
    let f3 = &rf(&[1, 2]) / &(&rf(&[1, 1]) * &rf(&[1, -1]));
    let m4 = &(&g(v, 1) * &g(t4, 2)) * &g(t2, -1);
    let f4 = &rf(&[1, 2]) / &(&zeta * &rf(&[2, 1]));

    let mut out = Vec::new();
    for (k, (m, f)) in [(m1, f1), (m2, one.clone()), (m3, f3), (m4, f4)].into_iter().enumerate() {
        let holds = rational(&m).is_some_and(|r| &r * &f == one);
        push(&mut out, format!("xti:{}", k + 1), holds);
    }
    out
}

/// `δ log X(g)` for the seven generators against the printed table.
pub fn sh_checks() -> Vec<IdentityCheck> {
    let h3 = rf(&[1, 2]).pow(3);
    let frac = |num: &[i64], den: i64| &rf(num) / &h3.scale(&rint(den));
    let expect = [
        (Generator::U, frac(&[1, 14, 24, 14, 1], 6)),
        (Generator::V, frac(&[-2, -4, -12, -10, 1], 6)),
        (Generator::Tau(0), frac(&[-1, -2, -3, -2, -1], 6)),
        (Generator::Tau(1), frac(&[1, 8, 6, -4, -2], 12)),
        (Generator::Tau(2), frac(&[1, -1, -3, -4, -2], 3)),
        (Generator::Tau(3), frac(&[1, -4, -12, -4, 1], 12)),
        (Generator::Tau(4), frac(&[-2, -4, 6, 8, 1], 12)),
    ];
    expect
        .into_iter()
        .map(|(h, want)| IdentityCheck { name: format!("sh: {h:?}"), holds: log_delta(&x_image(h)) == want })
        .collect()
}

/// (pph) exponents and (dpn) log-derivatives of the prefactor for `|l_i| ≤ r`.
pub fn prefactor_checks(r: i64) -> Vec<IdentityCheck> {
    let (mut pph_ok, mut dpn_ok) = (true, true);
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    let l = LIndex::new([a, b, c, d]);
                    let Ok(p) = prefactor(&l) else {
                        pph_ok = false;
                        continue;
                    };
                    pph_ok &= p.exponents() == &pph(&l);
                    let [l0, l1, _, l3, l4] = l.full();
                    dpn_ok &= p.log_delta() == dpn(l0, l1, l3, l4);
                }
            }
        }
    }
    vec![
        IdentityCheck { name: format!("pph: |l_i| ≤ {r}"), holds: pph_ok },
        IdentityCheck { name: format!("dpn: |l_i| ≤ {r}"), holds: dpn_ok },
    ]
}

/// Every exact identity above, with the prefactor grid `|l_i| ≤ 2`.
pub fn identity_suite() -> Vec<IdentityCheck> {
    let mut out = uvd_checks();
    out.extend(xti_checks());
    out.extend(sh_checks());
    out.extend(prefactor_checks(2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(v: Vec<IdentityCheck>) {
        for c in v {
            assert!(c.holds, "{}", c.name);
        }
    }

    #[test]
    fn uv_relations_hold_exactly() {
        all(uvd_checks());
    }

    #[test]
    fn reflection_images_are_one() {
        all(xti_checks());
    }

    #[test]
    fn log_derivatives_of_generators() {
        all(sh_checks());
        assert!(log_delta(&CuspMonomial::from_unit(UnitConst::i_pow(1))).is_zero());
    }

    #[test]
    fn prefactor_matches_closed_forms() {
        all(prefactor_checks(2));
    }

    #[test]
    fn suite_size() {
        assert_eq!(identity_suite().len(), 2 + 4 + 7 + 2);
    }

    #[test]
    fn a_wrong_table_entry_is_detected() {
        let wrong = &rf(&[1, 14, 24, 14, 2]) / &rf(&[1, 2]).pow(3).scale(&rint(6));
        assert_ne!(log_delta(&x_image(Generator::U)), wrong);
    }
}
