//! Simulation configuration and its validity checks.

use okl_lattice::{BoundaryParams, GridSpec, MollifierPair};
use serde::{Deserialize, Serialize};

use crate::SheError;

/// Time-stepping scheme for the heat part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Implicit heat flow (periodic tridiagonal solve), explicit potential
    /// and noise. Stable for `dt <= dx`.
    SemiImplicit,
    /// Fully explicit Euler step. Requires `dt <= dx^2 / 4`.
    Explicit,
}

/// Full configuration of one stochastic-heat-equation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub grid: GridSpec,
    pub params: BoundaryParams,
    pub moll: MollifierPair,
    /// Time step.
    pub dt: f64,
    /// Horizon.
    pub t_final: f64,
    pub scheme: Scheme,
    pub seed: u64,
    pub stream_id: u64,
    /// Snapshot spacing; defaults to `t_final / 100`.
    pub snapshot_cadence: f64,
    /// Drive the equation with mollified noise (and its compensating
    /// drift), and start from the random initial condition. When `false`
    /// the run is deterministic and starts from the flat profile.
    pub noise_enabled: bool,
    /// Include the mollified boundary potential in the drift.
    pub potential_enabled: bool,
}

impl SimConfig {
    /// A configuration with default cadence (`t_final / 100`) and both the
    /// noise and the potential switched on. Call [`SimConfig::validate`]
    /// before use, or rely on `run_trajectory` doing so.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        grid: GridSpec,
        params: BoundaryParams,
        moll: MollifierPair,
        dt: f64,
        t_final: f64,
        scheme: Scheme,
        seed: u64,
        stream_id: u64,
    ) -> Self {
        Self {
            grid,
            params,
            moll,
            dt,
            t_final,
            scheme,
            seed,
            stream_id,
            snapshot_cadence: t_final / 100.0,
            noise_enabled: true,
            potential_enabled: true,
        }
    }

    /// Checks the stability and resolution constraints:
    /// `dt <= dx^2/4` (explicit) or `dt <= dx` (semi-implicit),
    /// `zeta >= 2 dx` when the noise is on, `eps >= 4 dx` when the
    /// potential is on, and positive step/horizon/cadence.
    pub fn validate(&self) -> Result<(), SheError> {
        let dx = self.grid.dx();
        if !(self.dt > 0.0) || !(self.t_final > 0.0) || !(self.snapshot_cadence > 0.0) {
            return Err(SheError::InvalidConfig(format!(
                "need positive dt, t_final, cadence; got {}, {}, {}",
                self.dt, self.t_final, self.snapshot_cadence
            )));
        }
        let dt_max = match self.scheme {
            Scheme::Explicit => dx * dx / 4.0,
            Scheme::SemiImplicit => dx,
        };
        if self.dt > dt_max * (1.0 + 1e-12) {
            return Err(SheError::InvalidConfig(format!(
                "dt = {} exceeds the scheme limit {dt_max}",
                self.dt
            )));
        }
        if self.noise_enabled && self.moll.zeta < 2.0 * dx {
            return Err(SheError::InvalidConfig(format!(
                "zeta = {} under-resolved: need zeta >= 2 dx = {}",
                self.moll.zeta,
                2.0 * dx
            )));
        }
        if self.potential_enabled && self.moll.eps < 4.0 * dx {
            return Err(SheError::InvalidConfig(format!(
                "eps = {} under-resolved: need eps >= 4 dx = {}",
                self.moll.eps,
                4.0 * dx
            )));
        }
        Ok(())
    }
}
