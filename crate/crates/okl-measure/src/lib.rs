//! Monte Carlo machinery for the explicit invariant measure of the open
//! KPZ/stochastic Burgers equation with boundary slopes `(u, v)`.
//!
//! The stationary law of the slope process is absolutely continuous with
//! respect to the law of a Brownian height line `B`, with unnormalized
//! Radon-Nikodym density
//!
//! ```text
//! Y_{u,v}(h) = E_B[ exp(-u (h(0) - B(0)) - v (h(L) - B(L)))
//!                   * ( int_0^L exp(-(h - B)) )^{-(u+v)} ],
//! ```
//!
//! which depends on the height `h` only through its gradient (it is exactly
//! invariant under `h -> h + c`). This crate evaluates the density by
//! nested Monte Carlo in the log domain, computes the normalizing constant
//! `z = E_{h ~ BM}[Y(h)]`, importance-samples stationary observables, forms
//! Cameron-Martin weights for drift changes of measure, and compares
//! long-run simulation statistics against the importance-sampled
//! prediction.

mod density;
mod girsanov;
mod importance;
mod report;

pub use density::{density_y, log_sum_exp, normalizing_constant, DensityEstimate, NormalizingConstant};
pub use girsanov::girsanov_weight;
pub use importance::{importance_observable, BrownianHeight, ImportanceEstimate};
pub use report::{invariance_report, invariance_report_against, weighted_ks, ObsSpec, StatReport};

use okl_lattice::LatticeError;
use okl_noise::NoiseError;
use okl_she::SheError;

/// Inner/outer Monte Carlo sizes and the boundary-parameter guard.
///
/// For large `|u + v|` the negative power of the exponential integral makes
/// the importance-sampling variance explode; the default configuration
/// refuses `|u + v| > 3`. Set `allow_extreme` to override deliberately.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    /// Outer draws (Brownian height lines).
    pub outer_n: usize,
    /// Inner draws per density evaluation (auxiliary Brownian paths).
    pub inner_n: usize,
    /// Permit `|u + v| > 3` despite the variance risk.
    pub allow_extreme: bool,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            outer_n: 4096,
            inner_n: 256,
            allow_extreme: false,
        }
    }
}

/// Errors of the invariant-measure layer.
#[derive(Debug, thiserror::Error)]
pub enum MeasureError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    She(#[from] SheError),
    /// A log-domain quantity overflowed or became non-finite.
    #[error("numeric range: {0}")]
    NumericRange(String),
    /// Inputs are inconsistent or outside the guarded parameter range.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The trajectory does not carry the noise record the weight needs.
    #[error("missing noise log: {0}")]
    MissingNoiseLog(String),
}

pub(crate) fn check_params(params: okl_lattice::BoundaryParams, mc: &McConfig) -> Result<(), MeasureError> {
    if !mc.allow_extreme && (params.u + params.v).abs() > 3.0 {
        return Err(MeasureError::InvalidInput(format!(
            "|u + v| = {} exceeds the default guard of 3 (set allow_extreme to override)",
            (params.u + params.v).abs()
        )));
    }
    Ok(())
}
