//! One line per acceptance criterion. Run with `--nocapture` to see them.

use pvi_tau::analysis::{
    btr_check, det_oracle, e6_and_ahd_residuals, fn_ode_residual, picard_residual, pvi_residual, run_grid,
    GridCheck, SolutionPair, DEFAULT_BUDGET,
};
use pvi_tau::cuspalg::{identity_suite, prefactor};
use pvi_tau::exactfield::{rint, Basis, RationalFunction};
use pvi_tau::modular::{run_suite, SuiteConfig};
use pvi_tau::taulattice::{
    c_exponents, check_orders, dicyclic_relations, phase_mismatches, Family, KIndex, Lattice, Move, Region, Symmetry,
};
use std::time::Instant;

type Outcome = Result<String, String>;

fn k(a: [i64; 4]) -> KIndex {
    KIndex::new(a).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let lat = Lattice::new();
    for n in 0..=5i64 {
        let want = det_oracle(n as usize).map_err(|e| e.to_string())?;
        let got = lat.compute(&k([n, n, 0, 0]), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(got.value.to_rational_function() == want, || format!("n = {n} differs"))?;
    }
    Ok("n = 0..5 agree exactly".into())
}

fn initial_value() -> Outcome {
    let z = |c: &[i64]| RationalFunction::from_i64s(c);
    let num = &(&(&z(&[0, 1]).pow(2) * &z(&[-1, 1])) * &z(&[1, 1]).pow(2)) * &z(&[1, 2]);
    let printed = (&num / &z(&[2, 1]).pow(2)).scale(&rint(-2));
    let target = k([0, -1, -1, 0]);
    let lat = cube3()?;
    let (mut agree, mut recursions) = (0, 0);
    for mv in lat.moves_into(&target) {
        let Ok(v) = lat.derive(&target, &mv) else { continue };
        ensure(v.to_rational_function() == printed, || format!("{mv} gives a different value"))?;
        agree += 1;
        if !matches!(mv, Move::Symmetry { .. }) {
            recursions += 1;
        }
    }
    ensure(recursions > 0, || "no recursion reaches the initial value".into())?;
    Ok(format!("{agree} derivations ({recursions} by recursion) reproduce the printed value"))
}

fn btr_families() -> Outcome {
    let lat = Lattice::new();
    for fam in [Family::NN00, Family::N1N0M1] {
        for n in 1..=5 {
            let r = btr_check(&lat, fam, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("{fam:?} n = {n} fails"))?;
        }
    }
    Ok("both D_n families, n = 1..5".into())
}

fn cube3() -> Result<Lattice, String> {
    let lat = Lattice::new();
    lat.close(&Region::cube(3), None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    Ok(lat)
}

fn cusp_orders() -> Outcome {
    let lat = cube3()?;
    let mut n = 0;
    for (key, e) in lat.snapshot() {
        if key.sup_norm() > 3 {
            continue;
        }
        n += 1;
        check_orders(&key, &e.value).map_err(|m| format!("{key}: {m}"))?;
        let l = key.to_l();
        let c = c_exponents(&l);
        let pre = prefactor(&l).map_err(|e| e.to_string())?;
        for b in Basis::ALL {
            let total = pre.exponent(b) + rint(e.value.exponent(b));
            ensure(total == c.finite[b.index()], || format!("{key}: C at {} is {total}", b.label()))?;
        }
        let deg = e.value.remainder().deg() as i64;
        ensure(deg == c.deg_p, || format!("{key}: deg p = {deg}, expected {}", c.deg_p))?;
    }
    ensure(n == 1201, || format!("only {n} indices reached"))?;
    Ok(format!("{n} indices, six cusps and deg p each"))
}

fn symmetries() -> Outcome {
    let lat = cube3()?;
    let mut checked = 0;
    for (key, e) in lat.snapshot() {
        for s in Symmetry::ALL {
            let (to, v) = s.apply(&key, &e.value);
            let (back, w) = s.apply(&to, &v);
            ensure(back == key && w == e.value, || format!("{} twice moves {key}", s.name()))?;
            let stored = lat.compute(&to, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(stored.value == v, || format!("{} at {key}", s.name()))?;
            checked += 1;
        }
    }
    let errs = lat.verify_relations();
    ensure(errs.is_empty(), || format!("{} relation failures", errs.len()))?;
    Ok(format!("{checked} images agree; all five are involutions"))
}

fn grid(checks: &[GridCheck]) -> Result<usize, String> {
    let lat = Lattice::new();
    let mut total = 0;
    for &c in checks {
        let r = run_grid(&lat, 2, c, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {} failures, first {:?}", c.name(), r.failures.len(), r.failures.first()))?;
        total += r.total;
    }
    Ok(total)
}

fn pvi_grid() -> Outcome {
    let seed = SolutionPair::seed();
    ensure(picard_residual(&seed.q).is_zero(), || "seed (pa) residual".into())?;
    let r = pvi_residual(&seed.q, &seed.alphas).map_err(|e| e.to_string())?;
    ensure(r.is_zero(), || "seed PVI residual".into())?;
    let n = grid(&[GridCheck::Pvi, GridCheck::Hamiltonian])?;
    Ok(format!("{n} residuals vanish on |l_i| ≤ 2; seed residual 0"))
}

fn qd_grid() -> Outcome {
    let (e6, ahd) = e6_and_ahd_residuals();
    ensure(e6.is_zero() && ahd.is_zero(), || "seed e6/ahd residual".into())?;
    let n = grid(&[GridCheck::Qd])?;
    Ok(format!("{n} residuals vanish on |l_i| ≤ 2; e6 and ahd 0"))
}

fn cusp_identities() -> Outcome {
    let suite = identity_suite();
    let bad: Vec<_> = suite.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
    ensure(bad.is_empty(), || bad.join(", "))?;
    Ok(format!("{} exact identities", suite.len()))
}

fn fn_ode() -> Outcome {
    let lat = Lattice::new();
    for (n, deg) in [(1, 0), (2, 1), (3, 3), (4, 6)] {
        let (f, r) = fn_ode_residual(&lat, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(f.degree() == Some(deg), || format!("f_{n} has degree {:?}", f.degree()))?;
        ensure(r.is_zero(), || format!("f_{n} residual nonzero"))?;
    }
    Ok("n = 1..4, degrees 0, 1, 3, 6".into())
}

fn phase_group() -> Outcome {
    let bad = phase_mismatches(3);
    ensure(bad.is_empty(), || format!("{} indices disagree, first {}", bad.len(), bad[0]))?;
    let d = dicyclic_relations();
    ensure(d.all(), || format!("{d:?}"))?;
    Ok("|l_i| ≤ 3 consistent; dicyclic relations hold".into())
}

fn modular() -> Outcome {
    let cfg = SuiteConfig::default();
    let r = run_suite(&cfg).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.failures().join(", "))?;
    let worst = r.lines.iter().map(|l| l.max_err).fold(0.0, f64::max);
    Ok(format!("{} identities at {} points, worst {worst:.1e}", r.lines.len(), cfg.points))
}

fn multipath() -> Outcome {
    let lat = Lattice::new();
    lat.close(&Region::cube(2), None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let errs = lat.verify_relations();
    let events = lat.inconsistencies();
    ensure(errs.is_empty() && events.is_empty(), || format!("{:?}", events.first().or(errs.first())))?;
    Ok(format!("{} entries, no inconsistency", lat.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("oracle equivalence", oracle_equivalence),
        ("initial value", initial_value),
        ("btr families", btr_families),
        ("cusp orders and deg p", cusp_orders),
        ("symmetries", symmetries),
        ("PVI and Hamiltonian grid", pvi_grid),
        ("quartic tau ODE grid", qd_grid),
        ("cusp identities", cusp_identities),
        ("f_n equation", fn_ode),
        ("phase group", phase_group),
        ("modular suite", modular),
        ("multipath consistency", multipath),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
