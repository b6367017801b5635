//! Library side of the `pvi-tau` command: cache format, renderings and
//! verification suites.

pub mod cache;
pub mod render;
pub mod verify;

use pvi_tau::taulattice::LatticeError;

/// Failures with a dedicated exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lattice(LatticeError::OddParity(_)) => 2,
            CliError::Lattice(LatticeError::Unreachable { .. }) => 3,
            CliError::Lattice(_) => 1,
            CliError::Cache(_) => 4,
            CliError::Usage(_) => 2,
        }
    }
}
