//! Exact arithmetic in ℚ(ζ).

mod factored;
mod modgcd;
mod ratfunc;
mod rational;
mod series;
mod zpoly;

pub use factored::{psi_factored, Basis, FactoredForm};
pub use modgcd::poly_gcd;
pub use ratfunc::{psi, t_of_zeta, Point, RationalFunction, Substitution};
pub use rational::{rat, rint, rpow, Polynomial, Rational};
pub use series::{bivariate_series_invert, determinant, BivariatePoly};
pub use zpoly::ZPoly;

#[allow(unused_imports)]
pub(crate) use modgcd::nth_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("operation undefined on the zero function")]
    ZeroFunction,
    #[error("expansion centre is a zero of the function")]
    CenterIsZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("function has a pole outside the cusp set")]
    PoleOutsideLambda,
    #[error("division by zero")]
    DivisionByZero,
    #[error("factored form is not in normal form")]
    NotNormalized,
}
