//! Memoised lattice of values `t^(k)` with a search-based planner.

use super::formulas::{kma_product, kmb_product, nbr_product, order_at, predicted_order, Cusp, Symmetry};
use super::index::{KIndex, LIndex};
use crate::exactfield::{rint, FactoredForm, Rational};
use crate::Execution;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error(transparent)]
    OddParity(#[from] super::index::OddParity),
    #[error("index {k} unreachable within a budget of {budget} entries")]
    Unreachable { k: KIndex, budget: usize },
    #[error("inconsistent lattice at {k}: {reason}")]
    InconsistentLattice { k: KIndex, reason: String },
    #[error("divisor t^{0} vanishes")]
    DivisorVanishes(KIndex),
    #[error("missing lattice value t^{0}")]
    MissingDependency(KIndex),
}

/// How an entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Initial,
    /// Loaded from a cache file and re-validated.
    Loaded,
    Kma { base: KIndex },
    Kmb { base: KIndex },
    Nbr { base: KIndex },
    Symmetry { sym: Symmetry, from: KIndex },
}

impl Move {
    /// The lattice values this move consumed.
    pub fn inputs(&self, out: &KIndex) -> Vec<KIndex> {
        match self {
            Move::Initial | Move::Loaded => vec![],
            Move::Kma { base } => kma_corners(base)
                .into_iter()
                .filter(|c| c != out)
                .collect(),
            Move::Kmb { base } => kmb_corners(base)
                .into_iter()
                .filter(|c| c != out)
                .collect(),
            Move::Nbr { base } => {
                let [_, pp, pm] = nbr_points(base);
                vec![*base, if pp == *out { pm } else { pp }]
            }
            Move::Symmetry { from, .. } => vec![*from],
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Initial => write!(f, "initial"),
            Move::Loaded => write!(f, "loaded"),
            Move::Kma { base } => write!(f, "kma@{base}"),
            Move::Kmb { base } => write!(f, "kmb@{base}"),
            Move::Nbr { base } => write!(f, "nbr@{base}"),
            Move::Symmetry { sym, from } => write!(f, "{}({from})", sym.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEntry {
    pub k: KIndex,
    pub value: FactoredForm,
    pub provenance: Move,
}

/// `[k, k−e0+e1, k−2e0, k+e0+e1]`.
pub fn kma_corners(k: &KIndex) -> [KIndex; 4] {
    [*k, k.offset([-1, 1, 0, 0]), k.offset([-2, 0, 0, 0]), k.offset([1, 1, 0, 0])]
}

/// `[k, k−e0−e1, k−2e0, k+e0−e1]`.
pub fn kmb_corners(k: &KIndex) -> [KIndex; 4] {
    [*k, k.offset([-1, -1, 0, 0]), k.offset([-2, 0, 0, 0]), k.offset([1, -1, 0, 0])]
}

/// `[k, k+e0+e1, k−e0−e1]`.
pub fn nbr_points(k: &KIndex) -> [KIndex; 3] {
    [*k, k.offset([1, 1, 0, 0]), k.offset([-1, -1, 0, 0])]
}

fn initial_values() -> Vec<(KIndex, FactoredForm)> {
    vec![
        (KIndex::new([0, 0, 0, 0]).unwrap(), FactoredForm::one()),
        (KIndex::new([1, -1, 0, 0]).unwrap(), FactoredForm::one()),
        (KIndex::new([0, -1, -1, 0]).unwrap(), FactoredForm::monomial(rint(-2), [2, 2, 1, -2, 1])),
    ]
}

/// Checks the orders of a value against the closed forms at all six cusps.
pub fn check_orders(k: &KIndex, v: &FactoredForm) -> Result<(), String> {
    if v.is_zero() {
        return Err("value vanishes identically".into());
    }
    for c in Cusp::ALL {
        let (got, want) = (order_at(v, c), predicted_order(k, c));
        if got != want {
            return Err(format!("order at {} is {got}, expected {want}", c.label()));
        }
    }
    Ok(())
}

/// Set of indices the planner may visit.
#[derive(Clone, Debug)]
pub struct Region {
    box_radius: i64,
    spine: Vec<[i64; 4]>,
    radius: i64,
    extra: HashSet<KIndex>,
}

impl Region {
    /// The box `|k_i| ≤ r`.
    pub fn cube(r: i64) -> Self {
        Region { box_radius: r, spine: vec![], radius: 0, extra: HashSet::new() }
    }

    /// The box `|k_i| ≤ 2` together with the points within sup-distance
    /// `radius` of the discretised segment from the origin to `target` in
    /// l-coordinates.
    pub fn tube(target: &LIndex, radius: i64) -> Self {
        let l = target.l();
        let steps = l.iter().map(|x| x.abs()).max().unwrap_or(0).max(1);
        let spine = (0..=steps)
            .map(|i| {
                std::array::from_fn(|j| {
                    let num = l[j] * i;
                    // round half away from zero
                    let q = (2 * num.abs() + steps) / (2 * steps);
                    if num < 0 {
                        -q
                    } else {
                        q
                    }
                })
            })
            .collect();
        Region { box_radius: 2, spine, radius, extra: HashSet::new() }
    }

    pub fn with(mut self, k: KIndex) -> Self {
        self.extra.insert(k);
        self
    }

    pub fn contains(&self, k: &KIndex) -> bool {
        if k.sup_norm() <= self.box_radius || self.extra.contains(k) {
            return true;
        }
        let l = k.to_l().l();
        self.spine
            .iter()
            .any(|p| (0..4).map(|j| (l[j] - p[j]).abs()).max().unwrap() <= self.radius)
    }
}

/// Derivation statistics of a planner run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanStats {
    pub rounds: usize,
    pub computed: usize,
}

/// Thread-safe memo of lattice values. Reads are concurrent; inserts are
/// serialised and validated.
pub struct Lattice {
    entries: RwLock<HashMap<KIndex, Arc<TauEntry>>>,
    inconsistencies: Mutex<Vec<LatticeError>>,
    exec: Execution,
}

impl Default for Lattice {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone)]
struct Candidate {
    k: KIndex,
    mv: Move,
}

impl Lattice {
    pub fn new() -> Self {
        Self::with_execution(Execution::default())
    }

    pub fn with_execution(exec: Execution) -> Self {
        let lat = Lattice { entries: RwLock::new(HashMap::new()), inconsistencies: Mutex::new(vec![]), exec };
        for (k, v) in initial_values() {
            lat.insert(TauEntry { k, value: v, provenance: Move::Initial }).expect("initial values are valid");
        }
        lat
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, k: &KIndex) -> Option<Arc<TauEntry>> {
        self.entries.read().unwrap().get(k).cloned()
    }

    pub fn value(&self, k: &KIndex) -> Option<FactoredForm> {
        self.get(k).map(|e| e.value.clone())
    }

    /// Entries in lexicographic order of `k`.
    pub fn snapshot(&self) -> BTreeMap<KIndex, Arc<TauEntry>> {
        self.entries.read().unwrap().iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Inconsistencies recorded so far (values disagreeing across paths).
    pub fn inconsistencies(&self) -> Vec<LatticeError> {
        self.inconsistencies.lock().unwrap().clone()
    }

    /// Validates and stores an entry. A second value at a known index must
    /// agree with the first.
    pub fn insert(&self, e: TauEntry) -> Result<Arc<TauEntry>, LatticeError> {
        if let Err(reason) = check_orders(&e.k, &e.value) {
            return Err(self.record(LatticeError::InconsistentLattice { k: e.k, reason: format!("{} via {}", reason, e.provenance) }));
        }
        let mut map = self.entries.write().unwrap();
        if let Some(old) = map.get(&e.k).cloned() {
            drop(map);
            if old.value != e.value {
                return Err(self.record(LatticeError::InconsistentLattice {
                    k: e.k,
                    reason: format!("{} disagrees with {}", e.provenance, old.provenance),
                }));
            }
            return Ok(old);
        }
        let arc = Arc::new(e);
        map.insert(arc.k, arc.clone());
        Ok(arc)
    }

    fn record(&self, e: LatticeError) -> LatticeError {
        self.inconsistencies.lock().unwrap().push(e.clone());
        e
    }

    fn need(&self, k: &KIndex) -> Result<FactoredForm, LatticeError> {
        self.value(k).ok_or(LatticeError::MissingDependency(*k))
    }

    /// Evaluates a single move producing `k`.
    pub fn derive(&self, k: &KIndex, mv: &Move) -> Result<FactoredForm, LatticeError> {
        let divide = |prod: FactoredForm, by: &KIndex| -> Result<FactoredForm, LatticeError> {
            let d = self.need(by)?;
            if d.is_zero() {
                return Err(LatticeError::DivisorVanishes(*by));
            }
            prod.div_exact(&d).map_err(|e| LatticeError::InconsistentLattice { k: *k, reason: format!("{mv}: {e}") })
        };
        match mv {
            Move::Initial | Move::Loaded => self.need(k),
            Move::Kma { base } => {
                let [b, b1, p1, p2] = kma_corners(base);
                let prod = kma_product(&b, &self.need(&b)?, &self.need(&b1)?);
                divide(prod, if *k == p1 { &p2 } else { &p1 })
            }
            Move::Kmb { base } => {
                let [b, b1, p1, p2] = kmb_corners(base);
                let prod = kmb_product(&b, &self.need(&b)?, &self.need(&b1)?);
                divide(prod, if *k == p1 { &p2 } else { &p1 })
            }
            Move::Nbr { base } => {
                let [b, pp, pm] = nbr_points(base);
                let prod = nbr_product(&b, &self.need(&b)?);
                divide(prod, if *k == pp { &pm } else { &pp })
            }
            Move::Symmetry { sym, from } => {
                let (to, v) = sym.apply(from, &self.need(from)?);
                debug_assert_eq!(to, *k);
                Ok(v)
            }
        }
    }

    /// All moves that would produce a new value inside `region` from the
    /// values currently known, one per target index.
    fn frontier(&self, region: &Region) -> Vec<Candidate> {
        let map = self.entries.read().unwrap();
        let known = |k: &KIndex| map.contains_key(k);
        let mut keys: Vec<KIndex> = map.keys().copied().collect();
        keys.sort();
        let mut out: BTreeMap<KIndex, Move> = BTreeMap::new();
        let mut offer = |k: KIndex, mv: Move| {
            if region.contains(&k) && !known(&k) {
                out.entry(k).or_insert(mv);
            }
        };
        for k in &keys {
            for (corners, is_a) in [(kma_corners(k), true), (kmb_corners(k), false)] {
                let [_, b1, p1, p2] = corners;
                if !known(&b1) || known(&p1) == known(&p2) {
                    continue;
                }
                let target = if known(&p1) { p2 } else { p1 };
                offer(target, if is_a { Move::Kma { base: *k } } else { Move::Kmb { base: *k } });
            }
            let [_, pp, pm] = nbr_points(k);
            if known(&pp) != known(&pm) {
                offer(if known(&pp) { pm } else { pp }, Move::Nbr { base: *k });
            }
            for sym in Symmetry::ALL {
                offer(sym.target(k), Move::Symmetry { sym, from: *k });
            }
        }
        out.into_iter().map(|(k, mv)| Candidate { k, mv }).collect()
    }

    /// Every move whose inputs are all known and whose output is `k`.
    pub fn moves_into(&self, k: &KIndex) -> Vec<Move> {
        let map = self.entries.read().unwrap();
        let known = |x: &KIndex| map.contains_key(x);
        let mut bases: Vec<KIndex> = map.keys().copied().collect();
        bases.sort();
        let mut out = Vec::new();
        for b in &bases {
            let [_, b1, p1, p2] = kma_corners(b);
            if (p1 == *k || p2 == *k) && known(&b1) && known(if p1 == *k { &p2 } else { &p1 }) {
                out.push(Move::Kma { base: *b });
            }
            let [_, b1, p1, p2] = kmb_corners(b);
            if (p1 == *k || p2 == *k) && known(&b1) && known(if p1 == *k { &p2 } else { &p1 }) {
                out.push(Move::Kmb { base: *b });
            }
            let [_, pp, pm] = nbr_points(b);
            if (pp == *k && known(&pm)) || (pm == *k && known(&pp)) {
                out.push(Move::Nbr { base: *b });
            }
            for sym in Symmetry::ALL {
                if sym.target(b) == *k && b != k {
                    out.push(Move::Symmetry { sym, from: *b });
                }
            }
        }
        out
    }

    /// One round of expansion; returns the number of new entries.
    fn expand(&self, region: &Region, budget: usize) -> Result<usize, LatticeError> {
        let mut cands = self.frontier(region);
        let room = budget.saturating_sub(self.len());
        cands.truncate(room);
        let results = self.exec.map(&cands, |c| self.derive(&c.k, &c.mv));
        let mut added = 0;
        for (c, r) in cands.into_iter().zip(results) {
            let value = r?;
            self.insert(TauEntry { k: c.k, value, provenance: c.mv })?;
            added += 1;
        }
        Ok(added)
    }

    /// Expands until nothing new appears in `region` (or the target is known).
    pub fn close(&self, region: &Region, target: Option<&KIndex>, budget: usize) -> Result<PlanStats, LatticeError> {
        let mut stats = PlanStats::default();
        loop {
            if target.is_some_and(|t| self.get(t).is_some()) {
                return Ok(stats);
            }
            if self.len() >= budget {
                return Ok(stats);
            }
            let n = self.expand(region, budget)?;
            stats.rounds += 1;
            stats.computed += n;
            if n == 0 {
                return Ok(stats);
            }
        }
    }

    /// Computes `t^(k)`, searching for a derivation when not yet known.
    pub fn compute(&self, k: &KIndex, budget: usize) -> Result<Arc<TauEntry>, LatticeError> {
        if let Some(e) = self.get(k) {
            return Ok(e);
        }
        let (rep, path) = cheapest_orbit_element(k);
        if self.get(&rep).is_none() {
            let max_radius = 3;
            for radius in 1..=max_radius {
                let region = Region::tube(&rep.to_l(), radius).with(rep);
                self.close(&region, Some(&rep), budget)?;
                if self.get(&rep).is_some() || self.len() >= budget {
                    break;
                }
            }
        }
        if self.get(&rep).is_none() {
            return Err(LatticeError::Unreachable { k: *k, budget });
        }
        let mut cur = rep;
        for sym in path {
            let (next, v) = sym.apply(&cur, &self.need(&cur)?);
            self.insert(TauEntry { k: next, value: v, provenance: Move::Symmetry { sym, from: cur } })?;
            cur = next;
        }
        debug_assert_eq!(cur, *k);
        self.get(k).ok_or(LatticeError::Unreachable { k: *k, budget })
    }

    /// The chain of moves leading to `k`, inputs before outputs.
    pub fn derivation(&self, k: &KIndex) -> Vec<(KIndex, Move)> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut stack = vec![(*k, false)];
        while let Some((x, expanded)) = stack.pop() {
            let Some(e) = self.get(&x) else { continue };
            if expanded {
                out.push((x, e.provenance.clone()));
                continue;
            }
            if !seen.insert(x) {
                continue;
            }
            stack.push((x, true));
            for i in e.provenance.inputs(&x) {
                if !seen.contains(&i) {
                    stack.push((i, false));
                }
            }
        }
        out
    }

    /// Re-checks every bilinear relation and symmetry whose indices are all
    /// known, across all paths; disagreements are reported (and recorded).
    pub fn verify_relations(&self) -> Vec<LatticeError> {
        let snap = self.snapshot();
        let keys: Vec<KIndex> = snap.keys().copied().collect();
        let get = |k: &KIndex| snap.get(k).map(|e| &e.value);
        let checks = self.exec.map(&keys, |k| {
            let mut errs = Vec::new();
            let tk = get(k).unwrap();
            let fail = |what: String| LatticeError::InconsistentLattice { k: *k, reason: what };
            let [_, a1, a2, a3] = kma_corners(k);
            if let (Some(t1), Some(t2), Some(t3)) = (get(&a1), get(&a2), get(&a3)) {
                if kma_product(k, tk, t1) != t2.mul(t3) {
                    errs.push(fail(format!("kma relation at base {k}")));
                }
            }
            let [_, b1, b2, b3] = kmb_corners(k);
            if let (Some(t1), Some(t2), Some(t3)) = (get(&b1), get(&b2), get(&b3)) {
                if kmb_product(k, tk, t1) != t2.mul(t3) {
                    errs.push(fail(format!("kmb relation at base {k}")));
                }
            }
            let [_, pp, pm] = nbr_points(k);
            if let (Some(tp), Some(tm)) = (get(&pp), get(&pm)) {
                if nbr_product(k, tk) != tp.mul(tm) {
                    errs.push(fail(format!("nbr relation at base {k}")));
                }
            }
            for sym in Symmetry::ALL {
                let (to, v) = sym.apply(k, tk);
                if let Some(w) = get(&to) {
                    if *w != v {
                        errs.push(fail(format!("{} maps {k} to a different value at {to}", sym.name())));
                    }
                }
            }
            errs
        });
        let errs: Vec<LatticeError> = checks.into_iter().flatten().collect();
        self.inconsistencies.lock().unwrap().extend(errs.iter().cloned());
        errs
    }
}

/// Picks the orbit element of `k` under the symmetry group with the smallest
/// l-norm, and the chain of symmetries leading from it back to `k`.
pub fn cheapest_orbit_element(k: &KIndex) -> (KIndex, Vec<Symmetry>) {
    let mut parent: HashMap<KIndex, Option<(KIndex, Symmetry)>> = HashMap::new();
    parent.insert(*k, None);
    let mut queue = VecDeque::from([*k]);
    while let Some(x) = queue.pop_front() {
        for sym in Symmetry::ALL {
            let y = sym.target(&x);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(Some((x, sym)));
                queue.push_back(y);
            }
        }
    }
    let cost = |x: &KIndex| (x.to_l().l().iter().map(|v| v.abs()).max().unwrap(), x.sup_norm(), *x);
    let rep = *parent.keys().min_by_key(|x| cost(x)).unwrap();
    // parent links point towards k and every symmetry is an involution on
    // indices, so following them from rep applies the path rep → k
    let mut path = Vec::new();
    let mut cur = rep;
    while let Some(Some((prev, sym))) = parent.get(&cur) {
        path.push(*sym);
        cur = *prev;
    }
    (rep, path)
}

/// Constant `∏ Y_{k_j}` from the identification with tau functions.
pub fn y_product(k: &KIndex) -> Rational {
    k.k().iter().map(|&x| super::formulas::y_const(x)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::RationalFunction;

    fn k(a: [i64; 4]) -> KIndex {
        KIndex::new(a).unwrap()
    }

    #[test]
    fn initial_values_are_present() {
        let lat = Lattice::new();
        assert_eq!(lat.len(), 3);
        let v = lat.value(&k([0, -1, -1, 0])).unwrap();
        let z = RationalFunction::from_i64s(&[0, 1]);
        let want = &(&(&(&z * &z) * &RationalFunction::from_i64s(&[-1, 1])) * &RationalFunction::from_i64s(&[1, 1]).pow(2))
            * &RationalFunction::from_i64s(&[1, 2]);
        let want = (&want / &RationalFunction::from_i64s(&[2, 1]).pow(2)).scale(&rint(-2));
        assert_eq!(v.to_rational_function(), want);
    }

    #[test]
    fn orbit_path_leads_back() {
        for t in [[0, 8, 0, 0], [3, 3, 0, 0], [4, 3, 0, -1], [-2, 1, 3, 0]] {
            let kk = k(t);
            let (rep, path) = cheapest_orbit_element(&kk);
            let mut cur = rep;
            for s in path {
                cur = s.target(&cur);
            }
            assert_eq!(cur, kk);
        }
    }

    #[test]
    fn small_targets() {
        let lat = Lattice::new();
        let one = lat.compute(&k([1, 1, 0, 0]), 10_000).unwrap();
        assert_eq!(one.value, FactoredForm::one());
        let e = lat.compute(&k([2, 2, 0, 0]), 10_000).unwrap();
        assert!(check_orders(&e.k, &e.value).is_ok());
        assert!(lat.inconsistencies().is_empty());
    }
}
