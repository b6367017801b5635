//! The lattice of functions `t^(k0,k1,k2,k3)(ζ)`.

mod formulas;
mod index;
mod lattice;
mod phase;

pub use formulas::{
    c_exponents, coeff_a, coeff_b, coeff_c_nbr, coeff_q, coeff_r, coeff_s, kma_product, kmb_product, nbr_a, nbr_b,
    nbr_lhs_coeff, nbr_product, ota, otb, order_at, predicted_order, toda_rhs, y_const, CExponents, Cusp, Family,
    Symmetry,
};
pub use index::{KIndex, LIndex, OddParity};
pub use lattice::{
    check_orders, cheapest_orbit_element, kma_corners, kmb_corners, nbr_points, y_product, Lattice, LatticeError, Move,
    PlanStats, Region, TauEntry,
};
pub use phase::{
    dicyclic_relations, induction_step_holds, phase_from_word, phase_mismatches, phase_word, phase_x, ttc_phase, DicyclicReport,
    GeneratorImage, MonomialAutomorphism, PhaseAutomorphism, PhaseGen, PhaseWord, Twist, GENERATORS,
};
