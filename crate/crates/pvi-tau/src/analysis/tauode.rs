use super::painleve::AlphaVector;
use super::solutions::tau_image;
use super::AnalysisError;
use crate::exactfield::{rat, rint, t_of_zeta, Rational, RationalFunction};
use crate::taulattice::{LIndex, Lattice};
use num_traits::One;

/// `(C, G)` of the quartic equation at the given parameters.
pub fn qd_coefficients(a: &AlphaVector) -> (Rational, RationalFunction) {
    let one = Rational::one();
    let (a0, a1, a3, a4) = (a.get(0), a.get(1), a.get(3), a.get(4));
    let c = (a0 - &one) * (a0 - &one) + a1 * a1 + a3 * a3 + a4 * a4;
    let g1 = (a4 - a3) * (a3 + a4) * (a0 + a1 - &one) * (a0 - a1 - &one);
    let g0 = (a3 - a1) * (a3 + a1) * (a0 + a4 - &one) * (a0 - a4 - &one);
    let g = &t_of_zeta().scale(&g1) + &RationalFunction::constant(g0);
    (c, g)
}

/// `[δ^k τ / τ]` for `k = 0..=n` given `λ = δτ/τ`, via `D_{k+1} = δD_k + λD_k`.
pub fn tower(lambda: &RationalFunction, n: usize) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::one()];
    for k in 0..n {
        let next = &out[k].delta() + &(lambda * &out[k]);
        out.push(next);
    }
    out
}

/// The same quantities up to `k = 4` from the expanded expressions in `λ`.
pub fn tower_closed_form(l: &RationalFunction) -> [RationalFunction; 5] {
    let d1 = l.delta();
    let d2 = d1.delta();
    let d3 = d2.delta();
    let l2 = l * l;
    let s = |x: i64, f: &RationalFunction| f.scale(&rint(x));
    [
        RationalFunction::one(),
        l.clone(),
        &d1 + &l2,
        &(&d2 + &s(3, &(l * &d1))) + &(&l2 * l),
        &(&(&(&d3 + &s(4, &(l * &d2))) + &s(3, &(&d1 * &d1))) + &s(6, &(&l2 * &d1))) + &(&l2 * &l2),
    ]
}

/// The quartic equation divided by `τ²`, written in `λ = δτ/τ`.
pub fn qd_residual_for(lambda: &RationalFunction, c: &Rational, g: &RationalFunction) -> RationalFunction {
    let t = t_of_zeta();
    let one = RationalFunction::one();
    let d = tower(lambda, 4);
    let s = |f: &RationalFunction, x: Rational| f.scale(&x);
    let tt1 = &t * &(&t - &one);
    let one_m2t = &one - &t.scale(&rint(2));
    let cc = RationalFunction::constant(c.clone());
    let k2 = (&(&(&cc - &RationalFunction::int(6)) * &tt1) + &(&cc - &RationalFunction::int(3))).scale(&rat(1, 3));
    let k11 = (&(&cc * &(&tt1 + &one)) - &RationalFunction::int(3)).scale(&rat(1, 3));
    let k1 = s(&(&(&cc * &tt1) * &(&t.scale(&rint(2)) - &one)), rat(1, 6));
    let k0 = s(&(&tt1 * g), rat(1, 8));
    let terms = [
        d[4].clone(),
        s(&(&d[3] * &d[1]), rint(-4)),
        s(&(&one_m2t * &d[3]), rint(2)),
        s(&(&d[2] * &d[2]), rint(3)),
        s(&(&(&one_m2t * &d[2]) * &d[1]), rint(-2)),
        -&(&k2 * &d[2]),
        &k11 * &(&d[1] * &d[1]),
        &k1 * &d[1],
        -&k0,
    ];
    terms.iter().fold(RationalFunction::zero(), |acc, x| &acc + x)
}

pub fn qd_residual(lat: &Lattice, l: &LIndex, budget: usize) -> Result<RationalFunction, AnalysisError> {
    let tau = tau_image(lat, l, budget)?;
    let v = tau.value.to_rational_function();
    let lambda = &tau.mono.log_delta() + &(&v.delta() / &v);
    let (c, g) = qd_coefficients(&AlphaVector::at(l));
    Ok(qd_residual_for(&lambda, &c, &g))
}

/// `h0 = −(ζ²+ζ+1)² / (6(2ζ+1)³)` for the seed.
pub fn seed_h0() -> RationalFunction {
    let n = RationalFunction::from_i64s(&[1, 1, 1]).pow(2);
    (&n / &RationalFunction::from_i64s(&[1, 2]).pow(3)).scale(&rat(-1, 6))
}

/// `(b1, b2, b3, b4)` from the parameters.
pub fn seed_b(a: &AlphaVector) -> [Rational; 4] {
    let one = Rational::one();
    let h = |x: Rational| x / rint(2);
    [
        h(a.get(3) + a.get(4)),
        h(a.get(4) - a.get(3)),
        h(a.get(0) + a.get(1) - &one),
        h(a.get(0) - a.get(1) - &one),
    ]
}

/// Residuals of the E_VI equation for `h = h0 − C(2t−1)/24` and of the
/// third-order identity in `h0`, both at the seed.
pub fn e6_and_ahd_residuals() -> (RationalFunction, RationalFunction) {
    let a = AlphaVector::seed();
    let (c, g) = qd_coefficients(&a);
    let b = seed_b(&a);
    let t = t_of_zeta();
    let one = RationalFunction::one();
    let two_t_m1 = &t.scale(&rint(2)) - &one;
    let h0 = seed_h0();
    let h = &h0 - &two_t_m1.scale(&(&c / rint(24)));
    let tt1 = &t * &(&t - &one);

    let dt = t.derivative();
    let h1 = &h.derivative() / &dt;
    let h2 = &h1.derivative() / &dt;
    let prod_b = RationalFunction::constant(b.iter().fold(Rational::one(), |acc, x| acc * x));
    let a1 = &tt1 * &h2;
    let inner = &(&h1 * &(&h.scale(&rint(2)) - &(&two_t_m1 * &h1))) + &prod_b;
    let lhs = &(&h1 * &(&a1 * &a1)) + &(&inner * &inner);
    let rhs = b
        .iter()
        .fold(RationalFunction::one(), |acc, bk| &acc * &(&h1 + &RationalFunction::constant(bk * bk)));
    let e6 = &lhs - &rhs;

    let d1 = h0.delta();
    let d2 = d1.delta();
    let d3 = d2.delta();
    let one_m2t = -&two_t_m1;
    let cc = RationalFunction::constant(c.clone());
    let k = (&(&(&cc - &RationalFunction::int(6)) * &tt1) + &(&cc - &RationalFunction::int(3))).scale(&rat(1, 3));
    let terms = [
        d3,
        (&one_m2t * &d2).scale(&rint(2)),
        (&d1 * &d1).scale(&rint(6)),
        (&(&one_m2t * &h0) * &d1).scale(&rint(4)),
        -&(&k * &d1),
        (&tt1 * &(&h0 * &h0)).scale(&rint(2)),
        (&(&tt1 * &two_t_m1) * &h0).scale(&(&c / rint(6))),
        -&(&tt1 * &g).scale(&rat(1, 8)),
    ];
    let ahd = terms.iter().fold(RationalFunction::zero(), |acc, x| &acc + x);
    (e6, ahd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::painleve::{modified_hamiltonian, SolutionPair};
    use crate::analysis::DEFAULT_BUDGET;
    use crate::cuspalg::prefactor;

    #[test]
    fn seed_values() {
        let (c, g) = qd_coefficients(&AlphaVector::seed());
        assert_eq!(c, rint(1));
        assert!(g.is_zero());
        assert_eq!(seed_b(&AlphaVector::seed()), [rint(0), rint(0), rat(-1, 2), rat(-1, 2)]);
    }

    #[test]
    fn h0_three_ways() {
        let from_prefactor = prefactor(&LIndex::new([0, 0, 0, 0])).unwrap().log_delta();
        assert_eq!(seed_h0(), from_prefactor);
        assert_eq!(seed_h0(), modified_hamiltonian(&SolutionPair::seed()));
    }

    #[test]
    fn seed_residuals_vanish() {
        let (e6, ahd) = e6_and_ahd_residuals();
        assert!(ahd.is_zero(), "ahd residual {ahd}");
        assert!(e6.is_zero(), "e6 residual {e6}");
    }

    #[test]
    fn tower_matches_expansion() {
        let rf = RationalFunction::from_i64s;
        for lam in [&rf(&[1, 2, 3]) / &rf(&[2, 0, 1]), rf(&[0, -1, 0, 4]), &rf(&[5]) / &rf(&[1, 1])] {
            let t = tower(&lam, 4);
            let c = tower_closed_form(&lam);
            for k in 0..5 {
                assert_eq!(t[k], c[k], "k = {k}");
            }
            for k in 0..4 {
                assert_eq!(t[k].delta(), &t[k + 1] - &(&lam * &t[k]));
            }
        }
    }

    #[test]
    fn qd_on_small_lattice_points() {
        let lat = Lattice::new();
        for l in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, 1, 1], [1, -1, 0, 2]] {
            let r = qd_residual(&lat, &LIndex::new(l), DEFAULT_BUDGET).unwrap();
            assert!(r.is_zero(), "{l:?}");
        }
    }
}
