//! Bivariate polynomials over ℚ(ζ) and truncated expansions of their inverses.

use super::ratfunc::RationalFunction;
use super::rational::rint;
use super::ExactError;

/// `Σ c[i][j] x^i y^j` with coefficients in ℚ(ζ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<RationalFunction>>,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl BivariatePoly {
    /// Builds from a dense table; ragged rows are padded with zeros.
    pub fn new(mut coeffs: Vec<Vec<RationalFunction>>) -> Self {
        let w = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        for row in coeffs.iter_mut() {
            row.resize(w, RationalFunction::zero());
        }
        BivariatePoly { coeffs }
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::new(vec![vec![c]])
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> RationalFunction {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    fn dims(&self) -> (usize, usize) {
        (self.coeffs.len(), self.coeffs.first().map_or(0, Vec::len))
    }

    pub fn eval(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = RationalFunction::zero();
            for c in row.iter().rev() {
                inner = &(&inner * y) + c;
            }
            acc = &(&acc * x) + &inner;
        }
        acc
    }

    /// Formal partial derivative in `x`.
    pub fn partial_x(&self) -> Self {
        let (nx, _) = self.dims();
        Self::new(
            (1..nx)
                .map(|i| self.coeffs[i].iter().map(|c| c.scale(&rint(i as i64))).collect())
                .collect(),
        )
    }

    /// Formal partial derivative in `y`.
    pub fn partial_y(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().enumerate().skip(1).map(|(j, c)| c.scale(&rint(j as i64))).collect())
                .collect(),
        )
    }

    /// Re-expands in powers of `(x − a)` and `(y − b)`.
    pub fn shift(&self, a: &RationalFunction, b: &RationalFunction) -> Self {
        let (nx, ny) = self.dims();
        let apow: Vec<RationalFunction> = (0..nx.max(1)).map(|e| a.pow(e as i64)).collect();
        let bpow: Vec<RationalFunction> = (0..ny.max(1)).map(|e| b.pow(e as i64)).collect();
        let mut out = vec![vec![RationalFunction::zero(); ny]; nx];
        for i in 0..nx {
            for j in 0..ny {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                for r in 0..=i {
                    for s in 0..=j {
                        let k = rint(binomial(i, r) * binomial(j, s));
                        let term = (&(c * &apow[i - r]) * &bpow[j - s]).scale(&k);
                        out[r][s] = &out[r][s] + &term;
                    }
                }
            }
        }
        BivariatePoly { coeffs: out }
    }
}

/// Coefficients `h[i][j]` of `1/G` in powers `(x−a)^i (y−b)^j`, `0 ≤ i, j ≤ n`.
pub fn bivariate_series_invert(
    g: &BivariatePoly,
    a: &RationalFunction,
    b: &RationalFunction,
    n: usize,
) -> Result<Vec<Vec<RationalFunction>>, ExactError> {
    let s = g.shift(a, b);
    let g0 = s.coeff(0, 0);
    if g0.is_zero() {
        return Err(ExactError::CenterIsZero);
    }
    let inv0 = g0.recip()?;
    let mut h = vec![vec![RationalFunction::zero(); n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            let mut acc = if i == 0 && j == 0 { RationalFunction::one() } else { RationalFunction::zero() };
            for k in 0..=i {
                for l in 0..=j {
                    if k == 0 && l == 0 {
                        continue;
                    }
                    let c = s.coeff(k, l);
                    if c.is_zero() {
                        continue;
                    }
                    acc = &acc - &(&c * &h[i - k][j - l]);
                }
            }
            h[i][j] = &acc * &inv0;
        }
    }
    Ok(h)
}

/// Determinant by Gaussian elimination over ℚ(ζ).
pub fn determinant(m: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = m.len();
    let mut a: Vec<Vec<RationalFunction>> = m.to_vec();
    let mut det = RationalFunction::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return RationalFunction::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let pinv = p.recip().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &pinv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(c)
    }

    #[test]
    fn constant_inverse() {
        let g = BivariatePoly::constant(rf(&[3]));
        let h = bivariate_series_invert(&g, &rf(&[0, 1]), &rf(&[1]), 3).unwrap();
        for (i, row) in h.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let want = if i == 0 && j == 0 { RationalFunction::constant(rat(1, 3)) } else { RationalFunction::zero() };
                assert_eq!(c, &want);
            }
        }
    }

    #[test]
    fn geometric_series() {
        // 1 + (x − a) with a = ζ
        let a = rf(&[0, 1]);
        let g = BivariatePoly::new(vec![vec![&RationalFunction::one() - &a], vec![RationalFunction::one()]]);
        let h = bivariate_series_invert(&g, &a, &rf(&[2]), 2).unwrap();
        assert_eq!(h[0][0], rf(&[1]));
        assert_eq!(h[1][0], rf(&[-1]));
        assert_eq!(h[2][0], rf(&[1]));
        assert!(h[1][1].is_zero() && h[0][2].is_zero());
    }

    #[test]
    fn zero_centre() {
        let g = BivariatePoly::new(vec![vec![rf(&[0]), rf(&[1])]]);
        assert_eq!(bivariate_series_invert(&g, &rf(&[5]), &rf(&[0]), 1), Err(ExactError::CenterIsZero));
    }

    #[test]
    fn mixed_product_expansion() {
        // 1/((1+u)(1+v)) has coefficients (−1)^(i+j)
        let g = BivariatePoly::new(vec![vec![rf(&[1]), rf(&[1])], vec![rf(&[1]), rf(&[1])]]);
        let h = bivariate_series_invert(&g, &rf(&[0]), &rf(&[0]), 3).unwrap();
        for i in 0..=3 {
            for j in 0..=3 {
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                assert_eq!(h[i][j], rf(&[s]));
            }
        }
    }

    #[test]
    fn partials() {
        // x²y + 3y² → 2xy, x² + 6y
        let g = BivariatePoly::new(vec![vec![rf(&[0]), rf(&[0]), rf(&[3])], vec![rf(&[0])], vec![rf(&[0]), rf(&[1])]]);
        let (x, y) = (rf(&[0, 1]), rf(&[5]));
        assert_eq!(g.partial_x().eval(&x, &y), (&x * &y).scale(&rint(2)));
        assert_eq!(g.partial_y().eval(&x, &y), &(&x * &x) + &y.scale(&rint(6)));
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![rf(&[0, 1]), rf(&[1])], vec![rf(&[1]), rf(&[0, 1])]];
        assert_eq!(determinant(&m), rf(&[-1, 0, 1]));
        assert_eq!(determinant(&[]), RationalFunction::one());
    }
}
