//! Monte Carlo oracles for the Ito-calculus identities behind the
//! stationary theory: a Gaussian integration-by-parts identity for
//! exponential Brownian integrals, and the constancy in time of the
//! exponentially tilted density along the dynamics.

mod ibp;
mod martingale;

pub use ibp::{ibp_residual, IbpCase};
pub use martingale::{martingale_drift, martingale_drift_with_alpha, alpha_of, DriftReport};

use okl_lattice::LatticeError;
use okl_measure::MeasureError;
use okl_she::SheError;

/// Errors of the identity-checking layer.
#[derive(Debug, thiserror::Error)]
pub enum ItoError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    She(#[from] SheError),
    /// A moment left the double-precision range.
    #[error("numeric range: {0}")]
    NumericRange(String),
    /// A case description is inconsistent.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
