use super::AnalysisError;
use crate::exactfield::{bivariate_series_invert, determinant, rint, BivariatePoly, Rational, RationalFunction};
use num_bigint::BigInt;
use num_traits::One;

/// `G(x,y) = (ζ+2)xy(x+y) − ζ(x²+y²) − 2(ζ²+3ζ+1)xy + ζ(2ζ+1)(x+y)`.
fn g_poly() -> BivariatePoly {
    let rf = RationalFunction::from_i64s;
    let (lin, sq, mixed, cubic) = (rf(&[0, 1, 2]), rf(&[0, -1]), rf(&[-2, -6, -2]), rf(&[2, 1]));
    BivariatePoly::new(vec![
        vec![RationalFunction::zero(), lin.clone(), sq.clone()],
        vec![lin, mixed, cubic.clone()],
        vec![sq, cubic, RationalFunction::zero()],
    ])
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k)))
}

/// `t^(n,n,0,0)` from the determinant of mixed partials of `1/G` at
/// `x = 2ζ+1`, `y = ζ/(ζ+2)`.
pub fn det_oracle(n: usize) -> Result<RationalFunction, AnalysisError> {
    if n == 0 {
        return Ok(RationalFunction::one());
    }
    let g = g_poly();
    let a = RationalFunction::from_i64s(&[1, 2]);
    let b = &RationalFunction::zeta() / &RationalFunction::from_i64s(&[2, 1]);
    let h = bivariate_series_invert(&g, &a, &b, n - 1)?;
    let m: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| (0..n).map(|j| h[i][j].scale(&(factorial(i) * factorial(j)))).collect())
        .collect();
    let det = determinant(&m);
    let gab = g.eval(&a, &b);
    let norm = (0..n).fold(Rational::one(), |acc, j| acc * factorial(j) * factorial(j));
    Ok((&gab.pow((n * n) as i64) * &det).scale(&(rint(1) / norm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(det_oracle(0).unwrap(), RationalFunction::one());
        assert_eq!(det_oracle(1).unwrap(), RationalFunction::one());
    }

    #[test]
    fn g_at_centre_is_nonzero() {
        let a = RationalFunction::from_i64s(&[1, 2]);
        let b = &RationalFunction::zeta() / &RationalFunction::from_i64s(&[2, 1]);
        assert!(!g_poly().eval(&a, &b).is_zero());
    }
}
