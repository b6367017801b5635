//! Independent checks tying the lattice to Painlevé VI: the determinant
//! oracle, the induced solutions and their residuals, the quartic tau ODE,
//! structure of the solutions at the cusps and the f_n equation.

mod btr;
mod fn_ode;
mod grid;
mod oracle;
mod painleve;
mod solutions;
mod tauode;

use crate::cuspalg::CuspError;
use crate::exactfield::ExactError;
use crate::taulattice::{LIndex, LatticeError};

pub use btr::{btr_check, BtrReport};
pub use fn_ode::{extract_f_n, fn_ode_residual, zero_two_n_index};
pub use grid::{grid_indices, run_grid, GridCheck, GridReport};
pub use oracle::det_oracle;
pub use painleve::{
    dh_dp, dh_dq, ham_residuals, hamiltonian, hamiltonian_poly, modified_hamiltonian, partials_agree,
    picard_residual, pvi_residual, AlphaVector, SolutionPair,
};
pub use solutions::{p_of_l, q_of_l, solution_pair, structure_check, tau_image, StructureReport, TauImage};
pub use tauode::{
    e6_and_ahd_residuals, qd_coefficients, qd_residual, qd_residual_for, seed_b, seed_h0, tower, tower_closed_form,
};

/// Lattice budget used by the checks unless a caller supplies its own lattice.
pub const DEFAULT_BUDGET: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error("assembly at l = {l} is not a rational function: {reason}")]
    NonRationalAssembly { l: LIndex, reason: String },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("f_{n} extraction failed: {reason}")]
    ExtractionFailure { n: i64, reason: String },
    #[error("parameter vector violates the constraint: {0}")]
    BadAlphas(String),
}
