//! Self-normalized importance sampling of stationary observables.

use okl_lattice::{BoundaryParams, GridSpec};
use okl_noise::NoiseStream;
use serde::Serialize;

use crate::density::{density_y, ess_of};
use crate::{check_params, McConfig, MeasureError};

/// A Brownian height draw on the half-strip lattice (the proposal for the
/// importance sampler). Observables of the stationary slope read it through
/// [`BrownianHeight::gradient_pairing`].
#[derive(Debug, Clone)]
pub struct BrownianHeight {
    /// Height samples at `x = k dx`, `k = 0 ..= n/2`, with `values[0] = 0`.
    pub values: Vec<f64>,
    pub dx: f64,
}

impl BrownianHeight {
    /// The distributional pairing `<dh/dx, phi> = sum_k (h_{k+1} - h_k)
    /// phi(x_{k+1/2})` (midpoint rule, exact white-noise second moment
    /// `sum dx phi(m_k)^2`).
    pub fn gradient_pairing(&self, phi: impl Fn(f64) -> f64) -> f64 {
        self.values
            .windows(2)
            .enumerate()
            .map(|(k, w)| (w[1] - w[0]) * phi((k as f64 + 0.5) * self.dx))
            .sum()
    }
}

/// A self-normalized importance-sampling estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ImportanceEstimate {
    pub value: f64,
    /// Delta-method standard error of the self-normalized ratio.
    pub se: f64,
    pub ess: f64,
    /// Set when the effective sample size dropped below 50.
    pub ill_conditioned: bool,
}

/// `E_{mu_{u,v}}[obs] ~= sum_i Y(h_i) obs(h_i) / sum_i Y(h_i)` over
/// Brownian height draws `h_i`, each density evaluated by inner Monte
/// Carlo.
pub fn importance_observable(
    obs: impl Fn(&BrownianHeight) -> f64,
    grid: GridSpec,
    params: BoundaryParams,
    mc: &McConfig,
    stream: &mut NoiseStream,
) -> Result<ImportanceEstimate, MeasureError> {
    check_params(params, mc)?;
    if mc.outer_n == 0 {
        return Err(MeasureError::InvalidInput("outer_n must be >= 1".into()));
    }
    let mut logs = Vec::with_capacity(mc.outer_n);
    let mut values = Vec::with_capacity(mc.outer_n);
    for _ in 0..mc.outer_n {
        let h = BrownianHeight {
            values: stream.brownian_half_path(),
            dx: grid.dx(),
        };
        logs.push(density_y(&h.values, grid, params, mc.inner_n, stream)?.log_value);
        values.push(obs(&h));
    }
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logs.iter().map(|&l| (l - m).exp()).collect();
    let total: f64 = weights.iter().sum();
    let value: f64 = weights
        .iter()
        .zip(&values)
        .map(|(w, o)| w * o)
        .sum::<f64>()
        / total;
    let se = weights
        .iter()
        .zip(&values)
        .map(|(w, o)| {
            let wn = w / total;
            wn * wn * (o - value) * (o - value)
        })
        .sum::<f64>()
        .sqrt();
    if !value.is_finite() || !se.is_finite() {
        return Err(MeasureError::NumericRange(format!(
            "importance estimate {value} +- {se}"
        )));
    }
    let ess = ess_of(&logs);
    Ok(ImportanceEstimate {
        value,
        se,
        ess,
        ill_conditioned: ess < 50.0,
    })
}
