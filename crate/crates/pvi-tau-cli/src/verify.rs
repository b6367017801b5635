//! Verification suites, each reporting one line per tagged identity.

use pvi_tau::analysis::{
    btr_check, det_oracle, e6_and_ahd_residuals, fn_ode_residual, picard_residual, pvi_residual, run_grid,
    GridCheck, SolutionPair,
};
use pvi_tau::cuspalg::prefactor;
use pvi_tau::exactfield::{rint, Basis};
use pvi_tau::modular::{run_suite, SuiteConfig};
use pvi_tau::taulattice::{
    c_exponents, dicyclic_relations, kma_corners, kma_product, kmb_corners, kmb_product, nbr_points, nbr_product,
    order_at, phase_mismatches, predicted_order, Cusp, Family, KIndex, Lattice, Region, Symmetry,
};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Orders,
    Symmetries,
    Bilinear,
    Oracle,
    Pvi,
    Hamiltonian,
    Ode,
    Structure,
    Phases,
    Modular,
    All,
}

impl Suite {
    const EACH: [Suite; 10] = [
        Suite::Orders,
        Suite::Symmetries,
        Suite::Bilinear,
        Suite::Oracle,
        Suite::Pvi,
        Suite::Hamiltonian,
        Suite::Ode,
        Suite::Structure,
        Suite::Phases,
        Suite::Modular,
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub tag: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.tag, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub grid: i64,
    pub precision: usize,
    pub budget: usize,
}

/// Counts passes and remembers the first failure for each tag.
#[derive(Default)]
struct Tally(BTreeMap<String, (usize, usize, Option<String>)>);

impl Tally {
    fn record(&mut self, tag: &str, ok: bool, what: impl FnOnce() -> String) {
        let e = self.0.entry(tag.to_string()).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
            if e.2.is_none() {
                e.2 = Some(what());
            }
        }
    }

    fn lines(self, unit: &str) -> Vec<Line> {
        self.0
            .into_iter()
            .map(|(tag, (n, bad, first))| Line {
                tag,
                passed: bad == 0,
                detail: match first {
                    None => format!("{n} {unit}"),
                    Some(f) => format!("{bad} of {n} {unit} fail, first {f}"),
                },
            })
            .collect()
    }
}

fn failure(tag: &str, detail: impl fmt::Display) -> Line {
    Line { tag: tag.into(), passed: false, detail: detail.to_string() }
}

fn closed(grid: i64, budget: usize) -> Result<Lattice, Line> {
    let lat = Lattice::new();
    lat.close(&Region::cube(grid), None, budget).map_err(|e| failure("lattice", e))?;
    Ok(lat)
}

fn cusp_tag(c: Cusp) -> &'static str {
    match c {
        Cusp::Finite(Basis::Z) => "ota",
        Cusp::Finite(Basis::ZPlus2) => "otb",
        Cusp::Infinity => "tsc·ota",
        Cusp::Finite(Basis::TwoZPlus1) => "tsc·otb",
        Cusp::Finite(Basis::ZPlus1) => "tsd·ota",
        Cusp::Finite(Basis::ZMinus1) => "tsd·otb",
    }
}

fn orders(o: &VerifyOptions) -> Vec<Line> {
    let lat = match closed(o.grid, o.budget) {
        Ok(l) => l,
        Err(line) => return vec![line],
    };
    let mut t = Tally::default();
    for (k, e) in lat.snapshot() {
        if k.sup_norm() > o.grid {
            continue;
        }
        for c in Cusp::ALL {
            let (got, want) = (order_at(&e.value, c), predicted_order(&k, c));
            t.record(cusp_tag(c), got == want, || format!("{k}: {got} vs {want}"));
        }
        let l = k.to_l();
        let ce = c_exponents(&l);
        let ok = match prefactor(&l) {
            Ok(p) => {
                Basis::ALL.iter().all(|&b| p.exponent(b) + rint(e.value.exponent(b)) == ce.finite[b.index()])
                    && e.value.remainder().deg() as i64 == ce.deg_p
            }
            Err(_) => false,
        };
        t.record("ctc", ok, || format!("{k}"));
    }
    t.lines("indices")
}

fn symmetries(o: &VerifyOptions) -> Vec<Line> {
    let lat = match closed(o.grid, o.budget) {
        Ok(l) => l,
        Err(line) => return vec![line],
    };
    let mut t = Tally::default();
    for (k, e) in lat.snapshot() {
        for s in Symmetry::ALL {
            let (to, v) = s.apply(&k, &e.value);
            let (back, w) = s.apply(&to, &v);
            let ok = back == k
                && w == e.value
                && lat.compute(&to, o.budget).map(|x| x.value == v).unwrap_or(false);
            t.record(s.name(), ok, || format!("{k}"));
        }
    }
    t.lines("indices")
}

fn bilinear(o: &VerifyOptions) -> Vec<Line> {
    let lat = match closed(o.grid, o.budget) {
        Ok(l) => l,
        Err(line) => return vec![line],
    };
    let snap = lat.snapshot();
    let get = |k: &KIndex| snap.get(k).map(|e| &e.value);
    let mut t = Tally::default();
    for (k, e) in &snap {
        let tk = &e.value;
        let [_, a1, a2, a3] = kma_corners(k);
        if let (Some(x), Some(y), Some(z)) = (get(&a1), get(&a2), get(&a3)) {
            t.record("kma", kma_product(k, tk, x) == y.mul(z), || format!("{k}"));
        }
        let [_, b1, b2, b3] = kmb_corners(k);
        if let (Some(x), Some(y), Some(z)) = (get(&b1), get(&b2), get(&b3)) {
            t.record("kmb", kmb_product(k, tk, x) == y.mul(z), || format!("{k}"));
        }
        let [_, p, m] = nbr_points(k);
        if let (Some(x), Some(y)) = (get(&p), get(&m)) {
            t.record("nbr", nbr_product(k, tk) == x.mul(y), || format!("{k}"));
        }
    }
    let mut lines = t.lines("relations");
    let mut btr = Tally::default();
    for fam in [Family::NN00, Family::N1N0M1] {
        for n in 1..=5 {
            let ok = btr_check(&lat, fam, n, o.budget).map(|r| r.holds).unwrap_or(false);
            btr.record("btr", ok, || format!("{fam:?} n = {n}"));
        }
    }
    lines.extend(btr.lines("cases"));
    lines
}

fn oracle(o: &VerifyOptions) -> Vec<Line> {
    let lat = Lattice::new();
    let mut t = Tally::default();
    for n in 0..=5i64 {
        let ok = match (det_oracle(n as usize), KIndex::new([n, n, 0, 0])) {
            (Ok(want), Ok(k)) => lat.compute(&k, o.budget).map(|e| e.value.to_rational_function() == want).unwrap_or(false),
            _ => false,
        };
        t.record("ntd", ok, || format!("n = {n}"));
    }
    t.lines("determinants")
}

fn grid(o: &VerifyOptions, check: GridCheck, tag: &str) -> Line {
    let lat = Lattice::new();
    match run_grid(&lat, o.grid, check, o.budget) {
        Ok(r) if r.passed() => Line { tag: tag.into(), passed: true, detail: format!("{} indices, |l_i| ≤ {}", r.total, o.grid) },
        Ok(r) => {
            let (l, why) = &r.failures[0];
            failure(tag, format!("{} of {} indices fail, first {l}: {why}", r.failures.len(), r.total))
        }
        Err(e) => failure(tag, e),
    }
}

fn pvi(o: &VerifyOptions) -> Vec<Line> {
    let seed = SolutionPair::seed();
    let pa = picard_residual(&seed.q).is_zero()
        && pvi_residual(&seed.q, &seed.alphas).map(|r| r.is_zero()).unwrap_or(false);
    vec![
        Line { tag: "pa".into(), passed: pa, detail: "seed residual".into() },
        grid(o, GridCheck::Pvi, "pvi"),
    ]
}

fn ode(o: &VerifyOptions) -> Vec<Line> {
    let (e6, ahd) = e6_and_ahd_residuals();
    let mut lines = vec![
        Line { tag: "e6".into(), passed: e6.is_zero(), detail: "seed residual".into() },
        Line { tag: "ahd".into(), passed: ahd.is_zero(), detail: "seed residual".into() },
        grid(o, GridCheck::Qd, "qd"),
    ];
    let lat = Lattice::new();
    let mut t = Tally::default();
    for (n, deg) in [(1, 0), (2, 1), (3, 3), (4, 6)] {
        let ok = fn_ode_residual(&lat, n, o.budget).map(|(f, r)| f.degree() == Some(deg) && r.is_zero()).unwrap_or(false);
        t.record("fn", ok, || format!("n = {n}"));
    }
    lines.extend(t.lines("equations"));
    lines
}

fn phases(o: &VerifyOptions) -> Vec<Line> {
    let r = o.grid.max(0);
    let bad = phase_mismatches(r);
    let d = dicyclic_relations();
    vec![
        Line {
            tag: "ttc".into(),
            passed: bad.is_empty(),
            detail: match bad.first() {
                None => format!("|l_i| ≤ {r}"),
                Some(l) => format!("{} indices fail, first {l}", bad.len()),
            },
        },
        Line { tag: "dcr".into(), passed: d.all(), detail: format!("{d:?}") },
    ]
}

fn modular(o: &VerifyOptions) -> Vec<Line> {
    // Two thirds of the working digits; 1e-40 at the default 60.
    let tolerance = 10f64.powi(-((2 * o.precision / 3).min(300) as i32));
    let cfg = SuiteConfig { digits: o.precision, tolerance, ..SuiteConfig::default() };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return vec![failure("modular", e)],
    };
    let mut lines: Vec<Line> = report
        .exact
        .entries()
        .iter()
        .map(|(name, ok)| Line { tag: name.to_string(), passed: *ok, detail: "exact".into() })
        .collect();
    lines.extend(report.lines.iter().map(|l| Line {
        tag: l.name.clone(),
        passed: l.passed,
        detail: format!("max error {:.2e} over {} points", l.max_err, l.samples),
    }));
    lines
}

pub fn run(suite: Suite, o: &VerifyOptions) -> Vec<Line> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, o)).collect(),
        Suite::Orders => orders(o),
        Suite::Symmetries => symmetries(o),
        Suite::Bilinear => bilinear(o),
        Suite::Oracle => oracle(o),
        Suite::Pvi => pvi(o),
        Suite::Hamiltonian => vec![grid(o, GridCheck::Hamiltonian, "ham")],
        Suite::Ode => ode(o),
        Suite::Structure => vec![grid(o, GridCheck::Structure, "sca/scb/oq")],
        Suite::Phases => phases(o),
        Suite::Modular => modular(o),
    }
}
