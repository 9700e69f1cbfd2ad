//! Constancy in time of the exponentially tilted density along the
//! time-reversed dynamics.
//!
//! With `alpha = (u^3 + v^3)/6 - (u + v)/24`, the process
//! `M_t = exp(alpha t) Y_{u,v}(h_t)` read along the time-reversed
//! trajectory has constant ensemble mean. The check simulates forward
//! trajectories from the stationary zero-slope start, reads the reversed
//! states at the requested checkpoints, evaluates `Y` by inner Monte
//! Carlo, and compares the checkpoint means pairwise against time zero.

use okl_lattice::BoundaryParams;
use okl_measure::density_y;
use okl_noise::NoiseStream;
use okl_she::{cole_hopf, run_trajectory, time_reverse, SimConfig};
use serde::Serialize;

use crate::ItoError;

/// `alpha = (u^3 + v^3)/6 - (u + v)/24`.
pub fn alpha_of(params: BoundaryParams) -> f64 {
    let (u, v) = (params.u, params.v);
    (u * u * u + v * v * v) / 6.0 - (u + v) / 24.0
}

/// Checkpoint means of the tilted density and the zero-drift verdict.
#[derive(Debug, Clone, Serialize)]
pub struct DriftReport {
    pub alpha: f64,
    pub times: Vec<f64>,
    pub means: Vec<f64>,
    pub ses: Vec<f64>,
    /// Largest gap `|mean_t - mean_0|` over the later checkpoints.
    pub max_gap: f64,
    /// The 5-combined-standard-error threshold at the largest gap.
    pub threshold: f64,
    pub pass: bool,
}

/// Runs the drift check with the canonical `alpha` for `cfg`'s slopes.
pub fn martingale_drift(
    cfg: &SimConfig,
    ensemble_n: usize,
    checkpoints: &[f64],
    inner_n: usize,
) -> Result<DriftReport, ItoError> {
    martingale_drift_with_alpha(cfg, ensemble_n, checkpoints, inner_n, alpha_of(cfg.params))
}

/// Same as [`martingale_drift`] with an explicit `alpha`, used for
/// negative controls with a deliberately wrong exponential rate.
pub fn martingale_drift_with_alpha(
    cfg: &SimConfig,
    ensemble_n: usize,
    checkpoints: &[f64],
    inner_n: usize,
    alpha: f64,
) -> Result<DriftReport, ItoError> {
    if ensemble_n < 2 || checkpoints.len() < 2 {
        return Err(ItoError::InvalidInput(
            "need >= 2 ensemble members and >= 2 checkpoints".into(),
        ));
    }
    let g = cfg.grid;
    let mut samples: Vec<Vec<f64>> = vec![Vec::with_capacity(ensemble_n); checkpoints.len()];
    for member in 0..ensemble_n {
        let mut run_cfg = cfg.clone();
        run_cfg.stream_id = cfg.stream_id + member as u64;
        let traj = run_trajectory(&run_cfg)?;
        let rev = time_reverse(&traj);
        for (slot, &t) in checkpoints.iter().enumerate() {
            let idx = rev
                .times
                .iter()
                .position(|&s| (s - t).abs() <= 0.5 * cfg.dt + 1e-12)
                .ok_or_else(|| {
                    ItoError::InvalidInput(format!("no snapshot near checkpoint {t}"))
                })?;
            let h = cole_hopf(&rev.z_fields[idx])?;
            // Re-seeding per member pairs the inner Brownian draws across
            // checkpoints, so checkpoint differences share the inner noise.
            let mut inner =
                NoiseStream::new(cfg.seed, u64::MAX / 2 + member as u64, g, cfg.dt);
            let est = density_y(&h.half_values(), g, cfg.params, inner_n, &mut inner)?;
            let m = (alpha * t + est.log_value).exp();
            if !m.is_finite() {
                return Err(ItoError::NumericRange(format!(
                    "tilted density is not finite at t = {t}: log Y = {}",
                    est.log_value
                )));
            }
            samples[slot].push(m);
        }
    }
    let mut means = Vec::new();
    let mut ses = Vec::new();
    for col in &samples {
        let n = col.len() as f64;
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        means.push(mean);
        ses.push((var / n).sqrt());
    }
    let mut max_gap = 0.0;
    let mut threshold = f64::INFINITY;
    let mut pass = true;
    for t in 1..means.len() {
        let gap = (means[t] - means[0]).abs();
        let thr = 5.0 * (ses[t] * ses[t] + ses[0] * ses[0]).sqrt();
        if gap > thr {
            pass = false;
        }
        if gap > max_gap {
            max_gap = gap;
            threshold = thr;
        }
    }
    Ok(DriftReport {
        alpha,
        times: checkpoints.to_vec(),
        means,
        ses,
        max_gap,
        threshold,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use okl_lattice::{GridSpec, MollifierPair};
    use okl_she::Scheme;

    #[test]
    fn alpha_matches_the_closed_form() {
        assert_eq!(alpha_of(BoundaryParams::new(0.0, 0.0)), 0.0);
        let a = alpha_of(BoundaryParams::new(1.0, 0.0));
        assert!((a - (1.0 / 6.0 - 1.0 / 24.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_slopes_have_exactly_zero_drift() {
        // At u = v = 0 the tilted density is identically one, so every
        // checkpoint mean equals one bit-exactly.
        let g = GridSpec::new(1.0, 64).unwrap();
        let mut cfg = SimConfig::new(
            g,
            BoundaryParams::new(0.0, 0.0),
            MollifierPair::new_unchecked(0.25, 0.0625),
            1e-3,
            0.1,
            Scheme::SemiImplicit,
            21,
            0,
        );
        cfg.snapshot_cadence = 0.05;
        let report = martingale_drift(&cfg, 4, &[0.0, 0.05, 0.1], 8).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_gap, 0.0);
        assert!(report.means.iter().all(|&m| m == 1.0));
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let g = GridSpec::new(1.0, 64).unwrap();
        let cfg = SimConfig::new(
            g,
            BoundaryParams::new(0.0, 0.0),
            MollifierPair::new_unchecked(0.25, 0.0625),
            1e-3,
            0.1,
            Scheme::SemiImplicit,
            21,
            0,
        );
        assert!(martingale_drift(&cfg, 1, &[0.0, 0.1], 8).is_err());
        assert!(martingale_drift(&cfg, 4, &[0.0], 8).is_err());
    }
}
