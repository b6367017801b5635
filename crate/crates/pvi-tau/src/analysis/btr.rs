use super::AnalysisError;
use crate::exactfield::{rint, FactoredForm};
use crate::taulattice::{nbr_lhs_coeff, toda_rhs, Family, Lattice};

/// Result of checking the three-term recursion on one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BtrReport {
    pub family: Family,
    pub n: i64,
    /// With the constant `−(2k0+1)(2k1+1)` obtained by specialising the
    /// second-neighbour relation.
    pub holds: bool,
    /// With the constant `−(2n+3)(2n+1)` shared by both families.
    pub printed_constant_holds: bool,
}

pub fn btr_check(lat: &Lattice, family: Family, n: i64, budget: usize) -> Result<BtrReport, AnalysisError> {
    let k = family.index(n);
    let get = |d: [i64; 4]| lat.compute(&k.offset(d), budget).map(|e| e.value.clone());
    let (t, tp, tm) = (get([0; 4])?, get([1, 1, 0, 0])?, get([-1, -1, 0, 0])?);
    let rhs = toda_rhs(&t, &FactoredForm::from_zpoly(&family.d_n(n)));
    let prod = tp.mul(&tm);
    let printed = FactoredForm::monomial(rint(-(2 * n + 3) * (2 * n + 1)), [-2, 0, 0, 2, 0]);
    Ok(BtrReport {
        family,
        n,
        holds: nbr_lhs_coeff(&k).mul(&prod) == rhs,
        printed_constant_holds: printed.mul(&prod) == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_BUDGET;

    #[test]
    fn both_families_small_n() {
        let lat = Lattice::new();
        for n in 1..=3 {
            let a = btr_check(&lat, Family::NN00, n, DEFAULT_BUDGET).unwrap();
            assert!(a.holds && !a.printed_constant_holds);
            let b = btr_check(&lat, Family::N1N0M1, n, DEFAULT_BUDGET).unwrap();
            assert!(b.holds && b.printed_constant_holds);
        }
    }
}
