//! Time-integrated boundary-flux functionals for the open KPZ equation.
//!
//! The boundary flux collects the KPZ nonlinearity near the two endpoints
//! through the boundary potential `phi^eps` and a smooth-in-time window
//! `Psi^eps`, renormalized so that a central limit theorem holds as the
//! mollification scales vanish:
//!
//! ```text
//! B~ = X^eps( u^2 - Sha^zeta_{2L}(0) + 1/2 Sha^{zeta/2}_L + 1/12 ),
//! X^eps(g) = int Psi^eps_{s,t;r} <phi^eps, g_r> dr.
//! ```
//!
//! The limiting law is Gaussian with mean
//! `-(u^2+v^2) V_psi T / 2 - (u^3+v^3) T / 6` and variance
//! `(u^2+v^2) V_psi T`, where `V_psi` is the window constant computed in
//! `okl-spectral` by two independent routes.

mod clt;
mod functional;
mod kappa;
mod window;

pub use clt::{clt_report, CltPrediction};
pub use functional::{flux_b_tilde, flux_b_tilde_with, x_functional, FluxSample};
pub use kappa::discrete_nonlinearity_flux;
pub use window::window;

use okl_lattice::LatticeError;
use okl_she::SheError;

/// Errors of the flux layer.
#[derive(Debug, thiserror::Error)]
pub enum FluxError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    She(#[from] SheError),
    /// A mollification or window scale is incompatible with the interval.
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    /// Time samples are too sparse for the window quadrature.
    #[error("sampling too sparse: {0}")]
    Sampling(String),
    /// Inputs disagree on parameters or sizes.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The two independent window-constant computations disagree.
    #[error("accuracy: {0}")]
    Accuracy(String),
}

/// The window constant `V_psi`, computed by 2-D adaptive quadrature of the
/// Fourier-side double integral and cross-validated against the lattice
/// Riemann-sum route. Errors if the two routes disagree by more than
/// `tol` relative.
pub fn v_psi_checked(tol: f64) -> Result<f64, FluxError> {
    let quad = okl_spectral::v_psi(60.0, 0.25);
    let lattice = okl_spectral::v_psi_riemann(1.0 / 32.0, 40.0);
    let rel = (quad - lattice).abs() / quad.abs();
    if rel > tol {
        return Err(FluxError::Accuracy(format!(
            "V_psi routes disagree: quadrature {quad} vs lattice {lattice} (rel {rel})"
        )));
    }
    Ok(quad)
}
