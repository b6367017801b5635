//! Exact computation of the Painlevé VI tau-function lattice attached to
//! Picard's algebraic seed, together with independent checks of its algebraic,
//! differential and modular structure.

pub mod cuspalg;
pub mod analysis;
pub mod exactfield;
mod exec;
pub mod modular;
pub mod taulattice;

pub use exec::Execution;
