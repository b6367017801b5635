use proptest::prelude::*;
use pvi_tau::exactfield::{poly_gcd, rat, FactoredForm, Point, RationalFunction, Substitution, ZPoly};
use pvi_tau::modular::{action_of_matrix, mat_mul, PhiAction, T, U};
use pvi_tau::taulattice::{KIndex, LIndex, Symmetry};

/// Λ as (numerator, denominator).
const CUSPS: [(i64, i64); 5] = [(0, 1), (-1, 1), (1, 1), (-2, 1), (-1, 2)];

fn avoids_cusps(p: &ZPoly) -> bool {
    CUSPS.iter().all(|&(n, d)| !p.has_root(d, -n))
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| ZPoly::from_i64s(&c))
}

fn nonzero_zpoly() -> impl Strategy<Value = ZPoly> {
    zpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (zpoly(), nonzero_zpoly(), -5i64..=5, 1i64..=4).prop_map(|(n, d, a, b)| {
        RationalFunction::from_parts(rat(a, b), n, d)
    })
}

fn nonzero_ratfunc() -> impl Strategy<Value = RationalFunction> {
    ratfunc().prop_filter("nonzero", |f| !f.is_zero())
}

fn points() -> Vec<Point> {
    let mut v: Vec<Point> = CUSPS.iter().map(|&(a, b)| Point::Finite(rat(a, b))).collect();
    v.push(Point::Infinity);
    v
}

fn kindex() -> impl Strategy<Value = KIndex> {
    prop::array::uniform4(-4i64..=4).prop_filter_map("even sum", |k| KIndex::new(k).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_undoes_multiplication(f in ratfunc(), g in nonzero_ratfunc()) {
        prop_assert_eq!(&(&f * &g) / &g, f);
    }

    #[test]
    fn leibniz_rule(f in ratfunc(), g in ratfunc()) {
        let lhs = (&f * &g).delta();
        let rhs = &(&f.delta() * &g) + &(&f * &g.delta());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orders_add(f in nonzero_ratfunc(), g in nonzero_ratfunc()) {
        let fg = &f * &g;
        for p in points() {
            prop_assert_eq!(fg.order_at(&p).unwrap(), f.order_at(&p).unwrap() + g.order_at(&p).unwrap());
        }
    }

    #[test]
    fn factored_form_reassembles(
        e in prop::array::uniform5(-4i64..=4),
        c in -5i64..=5,
        rem in nonzero_zpoly(),
    ) {
        prop_assume!(c != 0);
        prop_assume!(avoids_cusps(&rem));
        let f = FactoredForm::from_parts(rat(c, 1), e, rem.clone());
        let back = FactoredForm::from_rational_function(&f.to_rational_function()).unwrap();
        prop_assert_eq!(back.exponents(), &e);
        prop_assert_eq!(back.to_rational_function(), f.to_rational_function());
        prop_assert_eq!(back.remainder().deg(), rem.deg());
    }

    #[test]
    fn degree_bookkeeping(e in prop::array::uniform5(-4i64..=4), rem in nonzero_zpoly()) {
        prop_assume!(avoids_cusps(&rem));
        let f = FactoredForm::from_parts(rat(1, 1), e, rem);
        let o = f.to_rational_function().order_at(&Point::Infinity).unwrap();
        prop_assert_eq!(f.order_at_infinity(), o);
    }

    #[test]
    fn substitutions_are_involutions(f in ratfunc()) {
        for s in [Substitution::Reciprocal, Substitution::Reflection] {
            prop_assert_eq!(f.substitute(s).substitute(s), f.clone());
        }
    }

    #[test]
    fn gcd_contains_common_factor(a in nonzero_zpoly(), b in nonzero_zpoly(), c in nonzero_zpoly()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = poly_gcd(&ac, &bc);
        prop_assert!(g.div_exact(&c.primitive_signed().1).is_some());
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
    }

    #[test]
    fn index_maps_round_trip(k in kindex()) {
        prop_assert_eq!(k.to_l().to_k(), k);
    }

    #[test]
    fn l_index_round_trip(l in prop::array::uniform4(-5i64..=5)) {
        let l = LIndex::new(l);
        prop_assert_eq!(l.to_k().to_l(), l);
    }

    #[test]
    fn symmetry_targets_are_involutions(k in kindex()) {
        for s in Symmetry::ALL {
            prop_assert_eq!(s.target(&s.target(&k)), k);
        }
    }

    #[test]
    fn phi_action_composition_is_associative(a in "[TU]{0,6}", b in "[TU]{0,6}", c in "[TU]{0,6}") {
        let (x, y, z) = (PhiAction::of_word(&a), PhiAction::of_word(&b), PhiAction::of_word(&c));
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
    }

    #[test]
    fn matrix_action_is_a_homomorphism(word in "[TU]{0,8}") {
        let m = word.chars().fold([[1, 0], [0, 1]], |acc, ch| mat_mul(&acc, if ch == 'T' { &T } else { &U }));
        prop_assert_eq!(action_of_matrix(&m), Some(PhiAction::of_word(&word)));
    }
}
