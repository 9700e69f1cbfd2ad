//! Full trajectories: runs from the stationary-type initial condition,
//! height and slope views, and exact time reversal.

use okl_lattice::{centered_gradient, Field};
use okl_noise::NoiseStream;

use crate::step::{drift_field, step_with_drift};
use crate::{SheError, SimConfig};

/// A completed run: snapshot times, the positive solution fields, and the
/// cumulative mollified noise at the same times (sufficient, together with
/// the seeded configuration, to replay or to evaluate weak-form and flux
/// functionals).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: SimConfig,
    /// Snapshot times, strictly increasing, starting at 0.
    pub times: Vec<f64>,
    /// Solution snapshots, strictly positive.
    pub z_fields: Vec<Field>,
    /// Cumulative mollified noise `W_t` at the snapshot times (`W_0 = 0`).
    pub w_fields: Vec<Field>,
    /// Total number of positivity-rejection halvings over the run.
    pub total_halvings: usize,
}

/// Site-wise logarithm `h = log Z`. Errors on a non-positive entry.
pub fn cole_hopf(z: &Field) -> Result<Field, SheError> {
    if let Some((site, &value)) = z
        .values
        .iter()
        .enumerate()
        .find(|&(_, &v)| !(v > 0.0))
    {
        return Err(SheError::NonPositive { site, value });
    }
    Ok(z.map(f64::ln))
}

/// Centered-difference slope of a height field on the periodic lattice.
pub fn burgers_slope(h: &Field) -> Field {
    centered_gradient(h)
}

/// Runs a full trajectory from `Z_0 = exp(A^zeta)` (or the flat profile in
/// deterministic mode) to the horizon, recording snapshots at the
/// configured cadence. The final time is always recorded.
pub fn run_trajectory(cfg: &SimConfig) -> Result<Trajectory, SheError> {
    cfg.validate()?;
    let g = cfg.grid;
    let mut stream = NoiseStream::new(cfg.seed, cfg.stream_id, g, cfg.dt);
    let z0 = if cfg.noise_enabled {
        stream.initial_height(cfg.moll.zeta)?.map(f64::exp)
    } else {
        Field::from_fn(g, |_| 1.0)
    };
    let drift = drift_field(cfg)?;
    let n_steps = (cfg.t_final / cfg.dt).round().max(1.0) as usize;
    let per_snap = (cfg.snapshot_cadence / cfg.dt).round().max(1.0) as usize;

    let mut z = z0;
    let mut w_cum = Field::zeros(g);
    let mut times = vec![0.0];
    let mut z_fields = vec![z.clone()];
    let mut w_fields = vec![w_cum.clone()];
    let mut total_halvings = 0;
    for step in 1..=n_steps {
        let w = if cfg.noise_enabled {
            stream.mollified_increment(cfg.moll.zeta)?.field
        } else {
            Field::zeros(g)
        };
        let (next, halvings) = step_with_drift(&z, &w, cfg.dt, &drift, cfg, &mut stream, 0)?;
        z = next;
        w_cum = w_cum.axpy(1.0, &w);
        total_halvings += halvings;
        if step % per_snap == 0 || step == n_steps {
            times.push(step as f64 * cfg.dt);
            z_fields.push(z.clone());
            w_fields.push(w_cum.clone());
        }
    }
    Ok(Trajectory {
        config: cfg.clone(),
        times,
        z_fields,
        w_fields,
        total_halvings,
    })
}

/// Exact time reversal: the reversed slope is `u` read backwards, and the
/// reversed height is re-anchored so that it vanishes at the origin at the
/// reversed initial time. In terms of the positive field this divides
/// every snapshot by the final-time value at the origin, read in reverse
/// order. The reversed noise log holds `W_T - W_{T - s}`.
pub fn time_reverse(traj: &Trajectory) -> Trajectory {
    let n = traj.times.len();
    let t_final = *traj.times.last().expect("non-empty trajectory");
    let origin = traj.config.grid.origin();
    let anchor = traj.z_fields[n - 1].values[origin];
    let w_final = &traj.w_fields[n - 1];
    let times = traj
        .times
        .iter()
        .rev()
        .map(|&t| t_final - t)
        .collect();
    let z_fields = traj
        .z_fields
        .iter()
        .rev()
        .map(|z| z.map(|v| v / anchor))
        .collect();
    let w_fields = traj
        .w_fields
        .iter()
        .rev()
        .map(|w| w_final.zip_with(w, |a, b| a - b))
        .collect();
    Trajectory {
        config: traj.config.clone(),
        times,
        z_fields,
        w_fields,
        total_halvings: traj.total_halvings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scheme;
    use approx::assert_abs_diff_eq;
    use okl_lattice::{BoundaryParams, GridSpec, MollifierPair};

    fn cfg() -> SimConfig {
        SimConfig::new(
            GridSpec::new(1.0, 64).unwrap(),
            BoundaryParams::new(0.5, 0.25),
            MollifierPair::new_unchecked(0.25, 0.0625),
            1e-3,
            0.05,
            Scheme::SemiImplicit,
            2024,
            3,
        )
    }

    #[test]
    fn replay_is_bit_identical() {
        let c = cfg();
        let a = run_trajectory(&c).unwrap();
        let b = run_trajectory(&c).unwrap();
        assert_eq!(a.times, b.times);
        for (za, zb) in a.z_fields.iter().zip(&b.z_fields) {
            assert_eq!(za.values, zb.values);
        }
    }

    #[test]
    fn snapshot_count_matches_cadence() {
        let mut c = cfg();
        c.snapshot_cadence = c.t_final / 10.0;
        let traj = run_trajectory(&c).unwrap();
        assert_eq!(traj.times.len(), 11);
        assert!(traj
            .times
            .windows(2)
            .all(|w| w[1] > w[0]));
        assert_abs_diff_eq!(*traj.times.last().unwrap(), c.t_final, epsilon = 1e-12);
    }

    #[test]
    fn solution_stays_positive() {
        let traj = run_trajectory(&cfg()).unwrap();
        for z in &traj.z_fields {
            assert!(z.values.iter().all(|&v| v > 0.0 && v.is_finite()));
        }
    }

    #[test]
    fn cole_hopf_trivials() {
        let g = GridSpec::new(1.0, 32).unwrap();
        let one = Field::from_fn(g, |_| 1.0);
        assert!(cole_hopf(&one).unwrap().values.iter().all(|&v| v == 0.0));
        let a = Field::from_fn(g, |x| 0.3 * (std::f64::consts::PI * x).cos());
        let z = a.map(f64::exp);
        let h = cole_hopf(&z).unwrap();
        for j in 0..g.n {
            assert_abs_diff_eq!(h.values[j], a.values[j], epsilon = 1e-12);
            assert_abs_diff_eq!(h.values[j].exp(), z.values[j], epsilon = 1e-12);
        }
        let bad = Field::from_values(g, vec![1.0; g.n]).unwrap().map(|v| v - 1.0);
        assert!(cole_hopf(&bad).is_err());
    }

    #[test]
    fn slope_of_constant_vanishes_and_is_odd_for_even_heights() {
        let g = GridSpec::new(1.0, 64).unwrap();
        let c = Field::from_fn(g, |_| 2.5);
        assert!(burgers_slope(&c).values.iter().all(|&v| v == 0.0));
        // An even, 2L-periodic height has an odd slope about 0 and L.
        let h = Field::from_fn(g, |x| (std::f64::consts::PI * x).cos());
        let u = burgers_slope(&h);
        for j in 0..g.n {
            assert_abs_diff_eq!(u.values[j], -u.values[g.mirror(j)], epsilon = 1e-13);
        }
    }

    #[test]
    fn slope_of_initial_height_recovers_the_slope_noise() {
        // A^zeta is the antiderivative of the mollified odd noise; the
        // centered difference of the trapezoid antiderivative is a 1-2-1
        // average of the integrand, so it matches eta^zeta up to O((dx/zeta)^2).
        let g = GridSpec::new(1.0, 512).unwrap();
        let zeta = 0.125;
        let mut s = NoiseStream::new(5, 0, g, 1e-3);
        let mut replay = s.clone();
        let a = s.initial_height(zeta).unwrap();
        let eta = replay.initial_slope(zeta).unwrap();
        let u = burgers_slope(&a);
        let scale = eta.values.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        for j in 0..g.n {
            // Exact discrete identity: centered difference of the
            // trapezoid antiderivative is the 1-2-1 smoothing of eta.
            let smoothed =
                0.25 * (eta.at(j as isize - 1) + 2.0 * eta.values[j] + eta.at(j as isize + 1));
            assert_abs_diff_eq!(u.values[j], smoothed, epsilon = 1e-12 * scale.max(1.0));
            // The smoothing bias is O((dx/zeta)^2) of the field scale.
            assert_abs_diff_eq!(u.values[j], eta.values[j], epsilon = 2e-2 * scale);
        }
    }

    #[test]
    fn time_reverse_is_exact() {
        let traj = run_trajectory(&cfg()).unwrap();
        let rev = time_reverse(&traj);
        let n = traj.times.len();
        let g = traj.config.grid;
        // Reversed height starts at 0 at the origin.
        let h0 = cole_hopf(&rev.z_fields[0]).unwrap();
        assert_abs_diff_eq!(h0.values[g.origin()], 0.0, epsilon = 1e-12);
        // Slopes are the forward slopes read backwards, exactly.
        for i in 0..n {
            let u_rev = burgers_slope(&cole_hopf(&rev.z_fields[i]).unwrap());
            let u_fwd = burgers_slope(&cole_hopf(&traj.z_fields[n - 1 - i]).unwrap());
            for j in 0..g.n {
                assert_abs_diff_eq!(u_rev.values[j], u_fwd.values[j], epsilon = 1e-11);
            }
        }
        // Double reversal recovers the slopes in the original order.
        let back = time_reverse(&rev);
        for i in 0..n {
            let u1 = burgers_slope(&cole_hopf(&back.z_fields[i]).unwrap());
            let u0 = burgers_slope(&cole_hopf(&traj.z_fields[i]).unwrap());
            for j in 0..g.n {
                assert_abs_diff_eq!(u1.values[j], u0.values[j], epsilon = 1e-11);
            }
        }
    }
}
