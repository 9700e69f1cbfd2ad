//! Empirical-vs-predicted comparison of stationary observables.

use okl_lattice::{bump_rho_scaled, BoundaryParams, Field};
use okl_noise::NoiseStream;
use okl_she::{burgers_slope, cole_hopf, run_trajectory, SimConfig};
use serde::Serialize;

use crate::density::density_y;
use crate::importance::BrownianHeight;
use crate::{check_params, McConfig, MeasureError};

/// A smoothed one-point observable: the pairing `<u, phi>` against a bump
/// of mass one centered at `center` with support width `width`, raised to
/// `moment` (1 or 2).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ObsSpec {
    pub center: f64,
    pub width: f64,
    pub moment: u8,
}

impl ObsSpec {
    pub fn id(&self) -> String {
        format!("m{}_c{}_w{}", self.moment, self.center, self.width)
    }

    /// The test bump as a function on `[0, L]`.
    pub fn phi(&self) -> impl Fn(f64) -> f64 + '_ {
        move |x: f64| bump_rho_scaled(self.width, x - self.center)
    }
}

/// One line of the empirical-vs-predicted comparison.
#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub id: String,
    pub simulated: f64,
    pub simulated_se: f64,
    pub importance: f64,
    pub importance_se: f64,
    /// Weighted two-sample Kolmogorov-Smirnov statistic of the smoothed
    /// one-point marginals (first-moment observables only).
    pub ks: Option<f64>,
    /// `|simulated - importance| <= 5` combined standard errors.
    pub pass: bool,
}

/// Weighted two-sample Kolmogorov-Smirnov statistic between uniformly
/// weighted samples `a` and samples `b` with (unnormalized) weights `w`.
pub fn weighted_ks(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    assert_eq!(b.len(), w.len());
    let mut a_sorted = a.to_vec();
    a_sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite samples"));
    let mut bw: Vec<(f64, f64)> = b.iter().cloned().zip(w.iter().cloned()).collect();
    bw.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite samples"));
    let total_w: f64 = w.iter().sum();
    let (mut ia, mut ib) = (0usize, 0usize);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    let mut ks = 0.0f64;
    while ia < a_sorted.len() || ib < bw.len() {
        let next_a = a_sorted.get(ia).copied().unwrap_or(f64::INFINITY);
        let next_b = bw.get(ib).map(|p| p.0).unwrap_or(f64::INFINITY);
        // Advance both CDFs through every sample at the next value, so
        // ties are fully absorbed before the gap is measured.
        let t = next_a.min(next_b);
        while ia < a_sorted.len() && a_sorted[ia] <= t {
            fa = (ia + 1) as f64 / a_sorted.len() as f64;
            ia += 1;
        }
        while ib < bw.len() && bw[ib].0 <= t {
            fb += bw[ib].1 / total_w;
            ib += 1;
        }
        ks = ks.max((fa - fb).abs());
    }
    ks
}

/// Compares `ensemble_n` simulated trajectories at `cfg` against the
/// importance-sampled stationary prediction at `measure_params` (normally
/// `cfg.params`; passing different parameters is the negative control).
pub fn invariance_report_against(
    cfg: &SimConfig,
    measure_params: BoundaryParams,
    panel: &[ObsSpec],
    ensemble_n: usize,
    mc: &McConfig,
) -> Result<Vec<StatReport>, MeasureError> {
    check_params(measure_params, mc)?;
    if ensemble_n < 2 || mc.outer_n < 2 {
        return Err(MeasureError::InvalidInput(
            "need at least 2 ensemble members and 2 outer draws".into(),
        ));
    }
    let g = cfg.grid;

    // Simulated pairings: one row per trajectory, one column per bump.
    let mut sim: Vec<Vec<f64>> = vec![Vec::with_capacity(ensemble_n); panel.len()];
    for i in 0..ensemble_n {
        let mut c = cfg.clone();
        c.stream_id = cfg.stream_id + i as u64;
        c.snapshot_cadence = c.t_final;
        let traj = run_trajectory(&c)?;
        let u_t = burgers_slope(&cole_hopf(traj.z_fields.last().expect("snapshots"))?);
        for (col, spec) in panel.iter().enumerate() {
            let phi = Field::from_fn(g, |x| (spec.phi())(x));
            sim[col].push(u_t.inner_half(&phi));
        }
    }

    // Importance pairings: shared Brownian draws and weights for the panel.
    let mut stream = NoiseStream::new(cfg.seed, u64::MAX - cfg.stream_id, g, cfg.dt);
    let mut logs = Vec::with_capacity(mc.outer_n);
    let mut imp: Vec<Vec<f64>> = vec![Vec::with_capacity(mc.outer_n); panel.len()];
    for _ in 0..mc.outer_n {
        let h = BrownianHeight {
            values: stream.brownian_half_path(),
            dx: g.dx(),
        };
        logs.push(density_y(&h.values, g, measure_params, mc.inner_n, &mut stream)?.log_value);
        for (col, spec) in panel.iter().enumerate() {
            imp[col].push(h.gradient_pairing(spec.phi()));
        }
    }
    let lmax = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logs.iter().map(|&l| (l - lmax).exp()).collect();
    let total_w: f64 = weights.iter().sum();

    let mut out = Vec::with_capacity(panel.len());
    for (col, spec) in panel.iter().enumerate() {
        let power = |p: f64| if spec.moment == 2 { p * p } else { p };
        // Simulation side: plain mean and standard error.
        let vals: Vec<f64> = sim[col].iter().map(|&p| power(p)).collect();
        let n = vals.len() as f64;
        let s_mean = vals.iter().sum::<f64>() / n;
        let s_var = vals
            .iter()
            .map(|x| (x - s_mean) * (x - s_mean))
            .sum::<f64>()
            / (n - 1.0);
        let s_se = (s_var / n).sqrt();
        // Importance side: self-normalized weighted mean and delta-method SE.
        let i_mean = weights
            .iter()
            .zip(&imp[col])
            .map(|(w, &q)| w * power(q))
            .sum::<f64>()
            / total_w;
        let i_se = weights
            .iter()
            .zip(&imp[col])
            .map(|(w, &q)| {
                let wn = w / total_w;
                wn * wn * (power(q) - i_mean) * (power(q) - i_mean)
            })
            .sum::<f64>()
            .sqrt();
        let ks = (spec.moment == 1).then(|| weighted_ks(&sim[col], &imp[col], &weights));
        let pass = (s_mean - i_mean).abs() <= 5.0 * (s_se * s_se + i_se * i_se).sqrt();
        out.push(StatReport {
            id: spec.id(),
            simulated: s_mean,
            simulated_se: s_se,
            importance: i_mean,
            importance_se: i_se,
            ks,
            pass,
        });
    }
    Ok(out)
}

/// [`invariance_report_against`] with the measure parameters read from the
/// simulation configuration (the matched comparison).
pub fn invariance_report(
    cfg: &SimConfig,
    panel: &[ObsSpec],
    ensemble_n: usize,
    mc: &McConfig,
) -> Result<Vec<StatReport>, MeasureError> {
    invariance_report_against(cfg, cfg.params, panel, ensemble_n, mc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_identical_samples_is_zero() {
        let a = [0.3, -1.0, 2.0, 0.7];
        let w = [1.0; 4];
        assert_eq!(weighted_ks(&a, &a, &w), 0.0);
    }

    #[test]
    fn ks_of_disjoint_samples_is_one() {
        let a = [0.0, 1.0, 2.0];
        let b = [5.0, 6.0];
        let w = [1.0, 3.0];
        assert_eq!(weighted_ks(&a, &b, &w), 1.0);
    }

    #[test]
    fn ks_sees_reweighting() {
        // Same support, but weights concentrate b's mass on the right half.
        let vals: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let w: Vec<f64> = (0..100).map(|i| if i < 50 { 0.0 } else { 1.0 }).collect();
        let ks = weighted_ks(&vals, &vals, &w);
        assert!((ks - 0.5).abs() < 0.02, "ks = {ks}");
    }

    #[test]
    fn obs_bump_has_unit_mass() {
        let spec = ObsSpec {
            center: 0.5,
            width: 0.25,
            moment: 1,
        };
        let phi = spec.phi();
        let n = 4000;
        let mass: f64 = (0..n).map(|i| phi(i as f64 / n as f64) / n as f64).sum();
        assert!((mass - 1.0).abs() < 1e-4, "mass = {mass}");
    }
}
