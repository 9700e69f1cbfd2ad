//! Cameron-Martin cross-check: tilting the base ensemble by the weight of
//! the boundary potential reproduces a direct run with the potential in
//! the drift.

use okl_lattice::{boundary_potential, BoundaryParams, Field, GridSpec, MollifierPair};
use okl_measure::girsanov_weight;
use okl_she::{burgers_slope, cole_hopf, run_trajectory, Scheme, SimConfig};

fn base_cfg(potential: bool, stream_id: u64) -> SimConfig {
    let mut cfg = SimConfig::new(
        GridSpec::new(1.0, 128).unwrap(),
        BoundaryParams::new(0.5, 0.25),
        MollifierPair::new_unchecked(0.25, 0.0625),
        2e-4,
        0.05,
        Scheme::SemiImplicit,
        501,
        stream_id,
    );
    cfg.potential_enabled = potential;
    cfg.snapshot_cadence = cfg.t_final;
    cfg
}

fn pairing(cfg: &SimConfig, psi: &Field) -> (f64, f64) {
    let traj = run_trajectory(cfg).unwrap();
    let u_t = burgers_slope(&cole_hopf(traj.z_fields.last().unwrap()).unwrap());
    let phi = boundary_potential(cfg.params, cfg.moll, cfg.grid).unwrap();
    let w = girsanov_weight(&traj, &phi).unwrap();
    (u_t.inner_half(psi), w)
}

#[test]
fn weighted_base_ensemble_matches_the_potential_run() {
    let reps = 2000;
    let g = GridSpec::new(1.0, 128).unwrap();
    // A bump overlapping the left boundary layer, where the potential acts.
    let psi = Field::from_fn(g, |x| okl_lattice::bump_rho_scaled(0.4, x - 0.2));

    let mut weighted = Vec::with_capacity(reps);
    let mut weights = Vec::with_capacity(reps);
    let mut direct = Vec::with_capacity(reps);
    for rep in 0..reps {
        let (p, w) = pairing(&base_cfg(false, rep as u64), &psi);
        weighted.push(w * p);
        weights.push(w);
        let (q, _) = pairing(&base_cfg(true, (reps + rep) as u64), &psi);
        direct.push(q);
    }
    let stats = |v: &[f64]| {
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    };
    let (wm, wse) = stats(&weights);
    assert!(
        (wm - 1.0).abs() <= 5.0 * wse,
        "mean Cameron-Martin weight {wm} (se {wse})"
    );
    let (tilted, t_se) = stats(&weighted);
    let (ref_mean, r_se) = stats(&direct);
    let tol = 5.0 * (t_se * t_se + r_se * r_se).sqrt();
    assert!(
        (tilted - ref_mean).abs() <= tol,
        "tilted {tilted} (se {t_se}) vs direct {ref_mean} (se {r_se})"
    );
}
