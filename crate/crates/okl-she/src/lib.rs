//! Time stepping for the mollified stochastic heat equation on the doubled
//! torus, with boundary potentials, Cole-Hopf and Burgers views, exact time
//! reversal, and weak-form diagnostics.
//!
//! The equation solved is
//!
//! ```text
//! dZ = 1/2 dxx Z dt + Z (phi^eps + 1/2 Sha^{zeta/2}_L) dt + Z dW^zeta,
//! Z_0 = exp(A^zeta),
//! ```
//!
//! with the even-reflected mollified noise `dW^zeta` and the odd-reflected
//! initial data from `okl-noise`. The positive solution carries the height
//! `h = log Z` and the slope `u = dx h`, which are the objects the
//! verification crates test.

mod config;
mod renorm;
mod step;
mod trajectory;
mod weak;

pub use config::{Scheme, SimConfig};
pub use renorm::renorm_c1;
pub use step::{drift_field, heat_semi_implicit, laplacian, step_she};
pub use trajectory::{burgers_slope, cole_hopf, run_trajectory, time_reverse, Trajectory};
pub use weak::weak_form_residual;

use okl_lattice::LatticeError;
use okl_noise::NoiseError;

/// Errors of the simulation layer.
#[derive(Debug, thiserror::Error)]
pub enum SheError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    /// A configuration violates a stability or resolution constraint.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// A field that must be positive has a non-positive entry.
    #[error("non-positive field value {value} at site {site}")]
    NonPositive { site: usize, value: f64 },
    /// Positivity could not be restored within the halving budget.
    #[error("blow-up: site {site} reached {value} at step size {dt}")]
    BlowUp { site: usize, value: f64, dt: f64 },
}
