//! Arbitrary-precision evaluation of eta and theta products, used to check
//! the modular description of the seed numerically: the φ-tables, the
//! Hauptmodul relations, and the branch choices made in `cuspalg`.

mod checks;
mod complex;
mod series;
mod tables;

pub use checks::{
    branch_ratios, check_tables, check_tep, cusp_value, validate_branches, eta_i_closed_form, generator_values, run_suite, sample_points, CheckLine, ModularReport, SuiteConfig,
};
pub use complex::{Ctx, Cx};
pub use series::{
    eta, eta_at, eta_scales, eta_vector, phi, phi_all, phi_from_etas, t_tau, theta, zeta_tau, ModularPoint,
    SeriesConfig,
};
pub use tables::{
    action_of_matrix, cc2_t, cc2_u, cc3_sigma, cc3_t1, cc3_t3, det, exact_table_report, in_k, mal_table, mat_mul,
    mat_pow, t1_matrix, t3_matrix, EtaImage, ExactTableReport, Mat, PhiAction, PhiImage, K_ELEMENT, T, U,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModularError {
    #[error("series does not reach the cutoff: |q| = {abs_q}, {needed} terms needed")]
    PrecisionLoss { abs_q: f64, needed: usize },
    #[error("point is not in the upper half-plane (Im τ = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no function φ_{0}")]
    BadIndex(usize),
    #[error("table mismatch in {cell}: error {err:e}")]
    TableMismatch { cell: String, err: f64 },
    #[error("branch mismatch for {generator}: ratio e^(2πi·{ratio_turns})")]
    BranchMismatch { generator: String, ratio_turns: f64 },
    #[error("arbitrary-precision backend: {0}")]
    Backend(String),
}
