use super::painleve::{ham_residuals, partials_agree, pvi_residual, AlphaVector};
use super::solutions::{q_of_l, solution_pair, structure_check};
use super::tauode::qd_residual;
use super::AnalysisError;
use crate::taulattice::{LIndex, Lattice};
use std::fmt;

/// Checks that run over a box of lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridCheck {
    Pvi,
    Hamiltonian,
    Qd,
    Structure,
}

impl GridCheck {
    pub const ALL: [GridCheck; 4] = [GridCheck::Pvi, GridCheck::Hamiltonian, GridCheck::Qd, GridCheck::Structure];

    pub fn name(self) -> &'static str {
        match self {
            GridCheck::Pvi => "pvi",
            GridCheck::Hamiltonian => "hamiltonian",
            GridCheck::Qd => "qd",
            GridCheck::Structure => "structure",
        }
    }

    /// Offsets (in l) of the lattice values the check reads.
    fn stencil(self) -> &'static [[i64; 4]] {
        const Q: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 1, 0, -1], [1, 0, 0, 0], [-1, 1, 0, 0]];
        const QP: [[i64; 4]; 7] =
            [[0, 0, 0, 1], [0, 1, 0, -1], [1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, 0, 0], [0, 0, 1, 0]];
        match self {
            GridCheck::Pvi | GridCheck::Structure => &Q,
            GridCheck::Hamiltonian => &QP,
            GridCheck::Qd => &[[0, 0, 0, 0]],
        }
    }
}

/// All `l` with `|l_i| ≤ r`, in lexicographic order.
pub fn grid_indices(r: i64) -> Vec<LIndex> {
    let side: Vec<i64> = (-r..=r).collect();
    let mut out = Vec::new();
    for &a in &side {
        for &b in &side {
            for &c in &side {
                for &d in &side {
                    out.push(LIndex::new([a, b, c, d]));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridReport {
    pub check: GridCheck,
    pub radius: i64,
    pub total: usize,
    pub failures: Vec<(LIndex, String)>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} |l_i|<={}: {}/{} points pass",
            self.check.name(),
            self.radius,
            self.total - self.failures.len(),
            self.total
        )
    }
}

fn check_point(lat: &Lattice, l: &LIndex, check: GridCheck, budget: usize) -> Result<Option<String>, AnalysisError> {
    Ok(match check {
        GridCheck::Pvi => {
            let r = pvi_residual(&q_of_l(lat, l, budget)?, &AlphaVector::at(l))?;
            (!r.is_zero()).then(|| format!("residual {r}"))
        }
        GridCheck::Hamiltonian => {
            let s = solution_pair(lat, l, budget)?;
            let (a, b) = ham_residuals(&s)?;
            if !partials_agree(&s.alphas, &s.q, &s.p) {
                Some("closed-form partials disagree with formal differentiation".into())
            } else {
                (!(a.is_zero() && b.is_zero())).then(|| format!("residuals {a}, {b}"))
            }
        }
        GridCheck::Qd => {
            let r = qd_residual(lat, l, budget)?;
            (!r.is_zero()).then(|| format!("residual {r}"))
        }
        GridCheck::Structure => {
            let q = q_of_l(lat, l, budget)?;
            let r = structure_check(&q, l)?;
            (!r.passed()).then(|| r.violations.join("; "))
        }
    })
}

/// Runs `check` on every point of the box `|l_i| ≤ r`. Lattice values are
/// computed first, then the residuals are evaluated with the lattice's
/// execution mode.
pub fn run_grid(lat: &Lattice, r: i64, check: GridCheck, budget: usize) -> Result<GridReport, AnalysisError> {
    let points = grid_indices(r);
    for l in &points {
        let a = l.l();
        for d in check.stencil() {
            let s = LIndex::new(std::array::from_fn(|i| a[i] + d[i]));
            lat.compute(&s.to_k(), budget)?;
        }
    }
    let results = lat.execution().map(&points, |l| check_point(lat, l, check, budget));
    let mut failures = Vec::new();
    for (l, res) in points.iter().zip(results) {
        match res {
            Ok(None) => {}
            Ok(Some(msg)) => failures.push((*l, msg)),
            Err(e) => failures.push((*l, e.to_string())),
        }
    }
    Ok(GridReport { check, radius: r, total: points.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_BUDGET;

    #[test]
    fn radius_one_grid() {
        let lat = Lattice::new();
        for c in GridCheck::ALL {
            let rep = run_grid(&lat, 1, c, DEFAULT_BUDGET).unwrap();
            assert!(rep.passed(), "{rep}: {:?}", &rep.failures[..rep.failures.len().min(3)]);
            assert_eq!(rep.total, 81);
        }
    }
}
