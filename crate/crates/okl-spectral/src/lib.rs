//! Closed-form spectral computations for the open KPZ laboratory.
//!
//! Everything here is deterministic arithmetic in the Fourier normalization
//!
//! ```text
//! f_hat(k) = (1/2L) ∫_{-L}^{L} f(x) e^{-i pi k x / L} dx,
//! f(x)     = sum_k f_hat(k) e^{i pi k x / L},
//! ```
//!
//! on the doubled torus `[-L, L)`. The crate reproduces, as finite truncated
//! sums with explicit tail control,
//!
//! * the transform of the boundary potential [`phi_hat`] and the stationary
//!   slope covariance [`ew_cov_fourier`],
//! * the Euler partial-fraction identities [`partial_fraction_sum`],
//! * the second-chaos boundary means and the windowed variance
//!   ([`bluecherry_mean`], [`elkrbr_mean_limit`], [`cherry_variance_limit`]),
//! * the fourth-chaos mode sums whose logarithmic divergences cancel
//!   ([`zero_mode_fourth_chaos`], [`boundary_fourth_chaos`], [`c2_constant`]),
//! * the mollifier constant [`v_psi`] that normalizes the flux CLT variance.
//!
//! Each limit statement is implemented both in its finite-`zeta` form (with
//! the comb transform `Sha_hat`) and in its per-mode `zeta -> 0` form; the
//! two routes are cross-checked against each other in the tests.

mod chaos4;
mod cherry;
mod euler;
mod ew;
mod phi;
mod series;
mod vpsi;

pub use chaos4::{
    boundary_fourth_chaos, c2_constant, candelabra_mode, candelabra_mode_limit,
    combined_zero_mode_collapsed, even_mode_fourth_chaos_limit, moose_mode, moose_mode_limit,
    zero_mode_fourth_chaos,
};
pub use cherry::{
    bluecherry_mean, bluecherry_profile, cherry_variance_finite, cherry_variance_limit,
    elkrbr_mean_limit,
};
pub use euler::{partial_fraction_sum, PartialFractionVariant};
pub use ew::ew_cov_fourier;
pub use phi::phi_hat;
pub use series::{FourierSeries, TruncationSpec};
pub use vpsi::{inverse_quadratic_mode_sum, v_psi, v_psi_riemann};

/// Errors produced by the spectral layer.
#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    /// A lattice-level construction failed.
    #[error(transparent)]
    Lattice(#[from] okl_lattice::LatticeError),
    /// A truncation parameter violates its invariants.
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
