//! Spatial discretization layer for the open KPZ laboratory.
//!
//! Everything lives on the doubled torus `[-L, L)` with periodic
//! identification: functions on `[0, L]` are carried to the full torus by
//! even or odd reflection, which is how Neumann-type boundary behaviour is
//! encoded throughout the workspace.
//!
//! The crate provides
//!
//! * [`GridSpec`] / [`Field`]: uniform lattices and real-valued lattice
//!   functions,
//! * the pinned reference bump functions [`bump_psi`] / [`bump_rho`] and
//!   their rescalings,
//! * mollified Dirac combs [`sha_comb`] and their Fourier coefficients
//!   [`sha_hat`],
//! * the mollified boundary potential [`boundary_potential`] carrying the
//!   slope pair `(u, v)`,
//! * even/odd extension, lattice gradients, quadrature and discrete Fourier
//!   helpers shared by the simulation and verification crates.

mod bump;
mod comb;
mod extend;
mod field;
mod fourier;
mod grad;
mod grid;
mod potential;
pub mod quad;

pub use bump::{
    bump_psi, bump_psi_scaled, bump_rho, bump_rho_scaled, conv_rho_rho, psi_cdf, psi_hat,
    r_scaled, rho_hat_line,
};
pub use comb::{sha_comb, sha_hat};
pub use extend::{even_extend, odd_extend};
pub use field::Field;
pub use fourier::{dft, idft, Complex};
pub use grad::{centered_gradient, grad_kappa};
pub use grid::GridSpec;
pub use potential::boundary_potential;

use serde::{Deserialize, Serialize};

/// Errors produced by lattice-level constructions.
#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    /// A mollification or discretization scale is outside its admissible range.
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    /// An input array does not have the length the grid demands.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// A grid parameter violates the construction invariants.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// Mollification scales for the boundary potential (`eps`) and the noise
/// (`zeta`), together with the identifiers of the pinned reference bumps.
///
/// The standing regime pairs the two scales as `zeta < eps / 100`; the
/// constructor enforces it when both scales are in play.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifierPair {
    /// Boundary-potential mollification scale.
    pub eps: f64,
    /// Noise mollification scale.
    pub zeta: f64,
}

impl MollifierPair {
    /// Builds a scale pair, checking positivity and the `zeta < eps/100`
    /// regime.
    pub fn new(eps: f64, zeta: f64) -> Result<Self, LatticeError> {
        if !(eps > 0.0) || !(zeta > 0.0) {
            return Err(LatticeError::InvalidScale(format!(
                "scales must be positive, got eps={eps}, zeta={zeta}"
            )));
        }
        if zeta >= eps / 100.0 {
            return Err(LatticeError::InvalidScale(format!(
                "need zeta < eps/100, got eps={eps}, zeta={zeta}"
            )));
        }
        Ok(Self { eps, zeta })
    }

    /// Builds a scale pair without the coupled-regime check, for contexts
    /// where only one of the two scales is used.
    pub fn new_unchecked(eps: f64, zeta: f64) -> Self {
        Self { eps, zeta }
    }
}

/// Boundary slopes `(u, v)` and the discrete-gradient scale `kappa` used by
/// the energy-solution nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryParams {
    /// Slope at the left endpoint `x = 0`.
    pub u: f64,
    /// Slope at the right endpoint `x = L` (with the sign convention that the
    /// height profile has derivative `-v` there).
    pub v: f64,
    /// Scale of the one-sided discrete gradient.
    pub kappa_grad: f64,
}

impl BoundaryParams {
    /// Convenience constructor with a default gradient scale.
    pub fn new(u: f64, v: f64) -> Self {
        Self {
            u,
            v,
            kappa_grad: 1.0 / 32.0,
        }
    }
}
