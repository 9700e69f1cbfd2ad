//! The unnormalized density `Y_{u,v}` and its normalizing constant.

use okl_lattice::{BoundaryParams, GridSpec};
use okl_noise::NoiseStream;
use serde::Serialize;

use crate::{check_params, McConfig, MeasureError};

/// Log-domain inner Monte Carlo estimate of the unnormalized density.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityEstimate {
    /// `log Y_{u,v}(h)` (unnormalized).
    pub log_value: f64,
    /// Inner sample count used.
    pub inner_n: usize,
    /// Standard error of the log (relative error of the linear mean).
    pub se_log: f64,
}

/// Normalizing constant `z = E_{h ~ BM}[Y(h)]` in the log domain.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormalizingConstant {
    pub log_z: f64,
    pub se_log: f64,
    /// Effective sample size of the outer weights.
    pub ess: f64,
    /// Set when the effective sample size dropped below 50.
    pub ill_conditioned: bool,
}

/// Numerically stable `log(sum(exp(v)))`.
pub fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Relative standard error of the linear-domain mean of `exp(logs)`,
/// which is the standard error of the log estimate to first order.
fn se_of_log_mean(logs: &[f64]) -> f64 {
    let n = logs.len() as f64;
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let a: Vec<f64> = logs.iter().map(|&s| (s - m).exp()).collect();
    let mean = a.iter().sum::<f64>() / n;
    let var = a.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    (var / n).sqrt() / mean
}

pub(crate) fn ess_of(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (mut s1, mut s2) = (0.0, 0.0);
    for &l in logs {
        let a = (l - m).exp();
        s1 += a;
        s2 += a * a;
    }
    s1 * s1 / s2
}

/// One log-weight `log[ exp(-u(h0-B0) - v(hL-BL)) * I^{-(u+v)} ]` for a
/// single auxiliary path `B`, with `log I` a trapezoid quadrature of
/// `exp(-(h - B))` assembled by log-sum-exp.
fn log_weight(h: &[f64], b: &[f64], dx: f64, u: f64, v: f64) -> f64 {
    let m = h.len();
    let mut terms = Vec::with_capacity(m);
    for k in 0..m {
        let w = if k == 0 || k == m - 1 { 0.5 } else { 1.0 };
        terms.push(-(h[k] - b[k]) + (w * dx).ln());
    }
    let log_i = log_sum_exp(&terms);
    -u * (h[0] - b[0]) - v * (h[m - 1] - b[m - 1]) - (u + v) * log_i
}

/// Unnormalized `log Y_{u,v}(h)` by inner Monte Carlo over auxiliary
/// Brownian paths drawn from `stream`. `h` holds height samples on the
/// half-strip lattice of `grid` (`grid.half_len()` values from `x = 0` to
/// `x = L`); the height gauge is immaterial (`Y(h + c) = Y(h)` exactly).
pub fn density_y(
    h: &[f64],
    grid: GridSpec,
    params: BoundaryParams,
    inner_n: usize,
    stream: &mut NoiseStream,
) -> Result<DensityEstimate, MeasureError> {
    if h.len() != grid.half_len() {
        return Err(MeasureError::InvalidInput(format!(
            "height has {} samples, grid half-strip has {}",
            h.len(),
            grid.half_len()
        )));
    }
    if inner_n == 0 {
        return Err(MeasureError::InvalidInput("inner_n must be >= 1".into()));
    }
    let dx = grid.dx();
    let mut logs = Vec::with_capacity(inner_n);
    for _ in 0..inner_n {
        let b = stream.brownian_half_path();
        let s = log_weight(h, &b, dx, params.u, params.v);
        if !s.is_finite() {
            return Err(MeasureError::NumericRange(format!(
                "inner log-weight is {s}"
            )));
        }
        logs.push(s);
    }
    Ok(DensityEstimate {
        log_value: log_sum_exp(&logs) - (inner_n as f64).ln(),
        inner_n,
        se_log: se_of_log_mean(&logs),
    })
}

/// `log z_{u,v} = log E_{h ~ BM}[Y_{u,v}(h)]` by outer Monte Carlo over
/// Brownian height draws, each density evaluated by the inner loop.
pub fn normalizing_constant(
    grid: GridSpec,
    params: BoundaryParams,
    mc: &McConfig,
    stream: &mut NoiseStream,
) -> Result<NormalizingConstant, MeasureError> {
    check_params(params, mc)?;
    if mc.outer_n == 0 {
        return Err(MeasureError::InvalidInput("outer_n must be >= 1".into()));
    }
    let mut logs = Vec::with_capacity(mc.outer_n);
    for _ in 0..mc.outer_n {
        let h = stream.brownian_half_path();
        logs.push(density_y(&h, grid, params, mc.inner_n, stream)?.log_value);
    }
    let ess = ess_of(&logs);
    Ok(NormalizingConstant {
        log_z: log_sum_exp(&logs) - (mc.outer_n as f64).ln(),
        se_log: se_of_log_mean(&logs),
        ess,
        ill_conditioned: ess < 50.0,
    })
}
