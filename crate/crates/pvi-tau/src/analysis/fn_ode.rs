use super::AnalysisError;
use crate::exactfield::{rint, Basis, FactoredForm, Polynomial, Rational};
use crate::taulattice::{KIndex, Lattice};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn zero_two_n_index(n: i64) -> KIndex {
    KIndex::new([0, 2 * n, 0, 0]).expect("even sum")
}

/// Writes `t^(0,2n,0,0) = (ζ(ζ+1)/(ζ+2))^{n(n−1)} f_n((2ζ+1)²)` and returns `f_n`.
pub fn extract_f_n(value: &FactoredForm, n: i64) -> Result<Polynomial, AnalysisError> {
    let fail = |reason: String| AnalysisError::ExtractionFailure { n, reason };
    let m = n * (n - 1);
    let mut want = [0i64; 5];
    want[Basis::Z.index()] = m;
    want[Basis::ZPlus1.index()] = m;
    want[Basis::ZPlus2.index()] = -m;
    if value.exponents() != &want {
        return Err(fail(format!("cusp exponents {:?}, expected {want:?}", value.exponents())));
    }
    let rem = value.remainder();
    let d = rem.deg();
    // 2^d · rem((w − 1)/2) as a polynomial in w = 2ζ + 1
    let in_w = rem.compose_mobius(1, -1, 0, 2, d);
    let scale = value.lead() / Rational::from_integer(BigInt::one() << d);
    let mut f = Vec::new();
    for (i, c) in in_w.coeffs().iter().enumerate() {
        if i % 2 == 1 {
            if !c.is_zero() {
                return Err(fail("not even in 2ζ+1".into()));
            }
        } else {
            f.push(Rational::from_integer(c.clone()) * &scale);
        }
    }
    let f = Polynomial::new(f);
    let deg = f.degree().unwrap_or(0) as i64;
    if deg != m / 2 {
        return Err(fail(format!("degree {deg}, expected {}", m / 2)));
    }
    Ok(f)
}

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

fn prod(fs: &[&Polynomial]) -> Polynomial {
    fs.iter().fold(p(&[1]), |acc, f| &acc * f)
}

/// The fourth-order equation satisfied by `f_n(z)`, evaluated on `f`.
pub fn fn_ode_residual_for(f: &Polynomial, n: i64) -> Polynomial {
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let f4 = f3.derivative();
    let z = p(&[0, 1]);
    let zm1 = p(&[-1, 1]);
    let zm9 = p(&[-9, 1]);
    let zm1_2 = &zm1 * &zm1;
    let zm9_2 = &zm9 * &zm9;
    let zm1_3 = &zm1_2 * &zm1;
    let zm9_3 = &zm9_2 * &zm9;
    let nn = rint(n * n);
    let nr = rint(n);

    let quad = &(&(&f4 * f) - &(&f3 * &f1).scale(&rint(4))) + &(&f2 * &f2).scale(&rint(3));
    let t1 = prod(&[&z, &zm1_3, &zm9_3, &quad]);
    let t2 = prod(&[&p(&[-3, 7]), &zm1_2, &zm9_3, &(&(&f3 * f) - &(&f2 * &f1))]);

    let shared = &(&p(&[1, 1]) * &zm9_2).scale(&nn) + &zm9_2.scale(&(rint(2) * &nr));
    let b3 = &shared + &p(&[351, -483, 105, -5]);
    let t3 = prod(&[&zm1, &zm9, &b3, &(&f2 * f)]).scale(&rint(-2));
    let b4 = &shared + &p(&[135, -111, 9, -1]);
    let t4 = prod(&[&zm1, &zm9, &b4, &(&f1 * &f1)]).scale(&rint(2));

    let b5 = &(&(&zm9 * &p(&[27, 139, -39, 1])).scale(&(rint(2) * &nn)) + &(&zm9 * &p(&[27, 2, 3])).scale(&(rint(8) * &nr)))
        + &p(&[-1890, 2184, -876, 72, -2]);
    let t5 = -&(&b5 * &(&f1 * f));

    let b6 = &(&(&p(&[-21, 5]) * &zm9).scale(&nn) - &(&p(&[15, 1]) * &zm9).scale(&nr)) + &p(&[9, 22, 1]);
    let t6 = (&b6 * &(f * f)).scale(&rint(-2 * n * (n - 1)));

    [t2, t3, t4, t5, t6].iter().fold(t1, |acc, x| &acc + x)
}

/// Extracts `f_n` from the lattice and returns the residual of its equation.
pub fn fn_ode_residual(lat: &Lattice, n: i64, budget: usize) -> Result<(Polynomial, Polynomial), AnalysisError> {
    let e = lat.compute(&zero_two_n_index(n), budget)?;
    let f = extract_f_n(&e.value, n)?;
    let r = fn_ode_residual_for(&f, n);
    Ok((f, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_BUDGET;

    #[test]
    fn degrees_and_residuals() {
        let lat = Lattice::new();
        for (n, deg) in [(1, 0), (2, 1), (3, 3)] {
            let (f, r) = fn_ode_residual(&lat, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(f.degree(), Some(deg));
            assert!(r.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn generic_polynomial_fails() {
        assert!(!fn_ode_residual_for(&p(&[1, 2, 3]), 3).is_zero());
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let v = FactoredForm::monomial(rint(1), [1, 0, 0, 0, 0]);
        assert!(extract_f_n(&v, 2).is_err());
    }
}
