use super::AnalysisError;
use crate::exactfield::{rat, rint, t_of_zeta, BivariatePoly, Rational, RationalFunction};
use crate::taulattice::LIndex;
use num_traits::{One, Zero};
use std::fmt;

/// Parameters `α0..α4` with `α0 + α1 + 2α2 + α3 + α4 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector([Rational; 5]);

impl AlphaVector {
    pub fn new(a: [Rational; 5]) -> Result<Self, AnalysisError> {
        let s = &a[0] + &a[1] + &a[2] * rint(2) + &a[3] + &a[4];
        if !s.is_one() {
            return Err(AnalysisError::BadAlphas(format!("sum is {s}")));
        }
        Ok(AlphaVector(a))
    }

    /// `(0, 0, 1/2, 0, 0)`.
    pub fn seed() -> Self {
        AlphaVector([Rational::zero(), Rational::zero(), rat(1, 2), Rational::zero(), Rational::zero()])
    }

    /// Seed parameters translated to the lattice point `l`.
    pub fn at(l: &LIndex) -> Self {
        let [l0, l1, l2, l3, l4] = l.full();
        AlphaVector([rint(-l0), rint(-l1), rat(1, 2) - rint(l2), rint(-l3), rint(-l4)])
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.0[j]
    }

    /// `(α, β, γ, δ)` of the second-order equation.
    pub fn classical(&self) -> [Rational; 4] {
        let sq = |x: &Rational| x * x / rint(2);
        [sq(&self.0[1]), -sq(&self.0[4]), sq(&self.0[3]), (Rational::one() - &self.0[0] * &self.0[0]) / rint(2)]
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPair {
    pub q: RationalFunction,
    pub p: RationalFunction,
    pub alphas: AlphaVector,
}

impl SolutionPair {
    /// The seed solution `q = ζ(ζ+2)/(2ζ+1)`, `p = (2ζ+1)/(2(1−ζ)(ζ+2))`.
    pub fn seed() -> Self {
        let rf = RationalFunction::from_i64s;
        SolutionPair {
            q: &rf(&[0, 2, 1]) / &rf(&[1, 2]),
            p: &rf(&[1, 2]) / &rf(&[4, -2, -2]),
            alphas: AlphaVector::seed(),
        }
    }
}

fn c(x: &Rational) -> RationalFunction {
    RationalFunction::constant(x.clone())
}

fn d_dt(f: &RationalFunction, dt: &RationalFunction) -> RationalFunction {
    &f.derivative() / dt
}

fn ensure_nondegenerate(q: &RationalFunction, t: &RationalFunction) -> Result<(), AnalysisError> {
    if q.is_zero() || q == &RationalFunction::one() || q == t {
        return Err(AnalysisError::DegenerateInput("q is one of 0, 1, t"));
    }
    Ok(())
}

/// Residual of the second-order equation for `q(ζ)` with `t = t(ζ)`.
pub fn pvi_residual(q: &RationalFunction, alphas: &AlphaVector) -> Result<RationalFunction, AnalysisError> {
    let t = t_of_zeta();
    ensure_nondegenerate(q, &t)?;
    let one = RationalFunction::one();
    let dt = t.derivative();
    let qt = d_dt(q, &dt);
    let qtt = d_dt(&qt, &dt);
    let (qm1, qmt, tm1) = (q - &one, q - &t, &t - &one);
    let inv = |f: &RationalFunction| f.recip().expect("nonzero");
    let [a, b, g, d] = alphas.classical();
    let first = (&(&(&inv(q) + &inv(&qm1)) + &inv(&qmt)) * &(&qt * &qt)).scale(&rat(1, 2));
    let second = &(&(&inv(&t) + &inv(&tm1)) + &inv(&qmt)) * &qt;
    let bracket = &(&(&c(&a) + &(&c(&b) * &(&t / &(q * q)))) + &(&c(&g) * &(&tm1 / &(&qm1 * &qm1))))
        + &(&c(&d) * &(&(&t * &tm1) / &(&qmt * &qmt)));
    let third = &(&(&(q * &qm1) * &qmt) / &(&(&t * &t) * &(&tm1 * &tm1))) * &bracket;
    Ok(&(&qtt - &first) + &(&second - &third))
}

/// `q⁴ − 4tq³ + 6tq² − 4tq + t²`.
pub fn picard_residual(q: &RationalFunction) -> RationalFunction {
    let t = t_of_zeta();
    let q2 = q * q;
    let q3 = &q2 * q;
    let tq = &t * q;
    &(&(&(&(&q2 * &q2) - (&(&t * &q3).scale(&rint(4)))) + (&(&t * &q2).scale(&rint(6)))) - &tq.scale(&rint(4)))
        + &(&t * &t)
}

/// `H(q, p)` as a polynomial in `(q, p)` over `ℚ(ζ)`.
pub fn hamiltonian_poly(alphas: &AlphaVector) -> BivariatePoly {
    let t = t_of_zeta();
    let one = RationalFunction::one();
    let a = |j| c(alphas.get(j));
    let a0m1 = &a(0) - &one;
    let (a2, a3, a4) = (a(2), a(3), a(4));
    let k = &a2 * &(&a(1) + &a2);
    let z = RationalFunction::zero;
    let q2p = -&(&(&a0m1 + &a3) + &a4);
    let q1p = &(&a0m1 + &(&a3 * &t)) + &(&a4 * &(&t + &one));
    let q0p = -&(&a4 * &t);
    BivariatePoly::new(vec![
        vec![-&(&k * &t), q0p, z()],
        vec![k, q1p, t.clone()],
        vec![z(), q2p, -&(&t + &one)],
        vec![z(), z(), one],
    ])
}

pub fn hamiltonian(alphas: &AlphaVector, q: &RationalFunction, p: &RationalFunction) -> RationalFunction {
    hamiltonian_poly(alphas).eval(q, p)
}

fn linear_coeff(alphas: &AlphaVector, q: &RationalFunction, t: &RationalFunction) -> RationalFunction {
    let one = RationalFunction::one();
    let a0m1 = &c(alphas.get(0)) - &one;
    let qm1 = q - &one;
    &(&(&a0m1 * &(q * &qm1)) + &(&c(alphas.get(3)) * &(q * &(q - t)))) + &(&c(alphas.get(4)) * &(&qm1 * &(q - t)))
}

/// `∂H/∂p = 2q(q−1)(q−t)p − {(α0−1)q(q−1) + α3 q(q−t) + α4(q−1)(q−t)}`.
pub fn dh_dp(alphas: &AlphaVector, q: &RationalFunction, p: &RationalFunction) -> RationalFunction {
    let t = t_of_zeta();
    let one = RationalFunction::one();
    let cubic = &(q * &(q - &one)) * &(q - &t);
    &(&cubic * p).scale(&rint(2)) - &linear_coeff(alphas, q, &t)
}

/// `∂H/∂q = (3q² − 2(1+t)q + t)p² − {(α0−1)(2q−1) + α3(2q−t) + α4(2q−1−t)}p + α2(α1+α2)`.
pub fn dh_dq(alphas: &AlphaVector, q: &RationalFunction, p: &RationalFunction) -> RationalFunction {
    let t = t_of_zeta();
    let one = RationalFunction::one();
    let two_q = q.scale(&rint(2));
    let cubic_d = &(&(q * q).scale(&rint(3)) - &(&(&t + &one) * &two_q)) + &t;
    let lin_d = &(&(&(&c(alphas.get(0)) - &one) * &(&two_q - &one)) + &(&c(alphas.get(3)) * &(&two_q - &t)))
        + &(&c(alphas.get(4)) * &(&(&two_q - &one) - &t));
    let k = c(&(alphas.get(2) * (alphas.get(1) + alphas.get(2))));
    &(&(&cubic_d * &(p * p)) - &(&lin_d * p)) + &k
}

/// Compares the closed-form partials with formal differentiation of `H`.
pub fn partials_agree(alphas: &AlphaVector, q: &RationalFunction, p: &RationalFunction) -> bool {
    let h = hamiltonian_poly(alphas);
    h.partial_y().eval(q, p) == dh_dp(alphas, q, p) && h.partial_x().eval(q, p) == dh_dq(alphas, q, p)
}

/// Residuals of `t(t−1)q̇ = ∂H/∂p` and `t(t−1)ṗ = −∂H/∂q`.
pub fn ham_residuals(sol: &SolutionPair) -> Result<(RationalFunction, RationalFunction), AnalysisError> {
    let t = t_of_zeta();
    ensure_nondegenerate(&sol.q, &t)?;
    let r1 = &sol.q.delta() - &dh_dp(&sol.alphas, &sol.q, &sol.p);
    let r2 = &sol.p.delta() + &dh_dq(&sol.alphas, &sol.q, &sol.p);
    Ok((r1, r2))
}

/// `h0 = H + t/12·(…) + (t−1)/12·(…)`.
pub fn modified_hamiltonian(sol: &SolutionPair) -> RationalFunction {
    let t = t_of_zeta();
    let a = |j: usize| sol.alphas.get(j).clone();
    let a0m1 = a(0) - Rational::one();
    let sq = |x: &Rational| x * x;
    let w1 = rint(2) * sq(&a0m1) - sq(&a(1)) + rint(2) * sq(&a(3)) - sq(&a(4)) + rint(6) * &a0m1 * a(3);
    let w2 = rint(2) * sq(&a0m1) - sq(&a(1)) - sq(&a(3)) + rint(2) * sq(&a(4)) + rint(6) * &a0m1 * a(4);
    let tm1 = &t - &RationalFunction::one();
    let h = hamiltonian(&sol.alphas, &sol.q, &sol.p);
    &(&h + &t.scale(&(w1 / rint(12)))) + &tm1.scale(&(w2 / rint(12)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_solves_everything() {
        let s = SolutionPair::seed();
        assert!(picard_residual(&s.q).is_zero());
        assert!(pvi_residual(&s.q, &s.alphas).unwrap().is_zero());
        let (a, b) = ham_residuals(&s).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(partials_agree(&s.alphas, &s.q, &s.p));
    }

    #[test]
    fn seed_modified_hamiltonian() {
        let want = &RationalFunction::from_i64s(&[1, 1, 1]).pow(2) / &RationalFunction::from_i64s(&[1, 2]).pow(3);
        assert_eq!(modified_hamiltonian(&SolutionPair::seed()), want.scale(&rat(-1, 6)));
    }

    #[test]
    fn wrong_parameters_leave_a_residual() {
        let s = SolutionPair::seed();
        let a = AlphaVector::new([rint(1), rint(0), rat(0, 1), rint(0), rint(0)]).unwrap();
        assert!(!pvi_residual(&s.q, &a).unwrap().is_zero());
    }

    #[test]
    fn degenerate_q() {
        assert!(pvi_residual(&RationalFunction::one(), &AlphaVector::seed()).is_err());
        assert!(AlphaVector::new([rint(1), rint(1), rint(0), rint(0), rint(0)]).is_err());
    }

    #[test]
    fn lattice_alphas_satisfy_constraint() {
        for l in [[0, 0, 0, 0], [1, -2, 0, 3], [-1, 1, 1, 2]] {
            let a = AlphaVector::at(&LIndex::new(l));
            assert!(AlphaVector::new(a.0.clone()).is_ok());
        }
    }
}
