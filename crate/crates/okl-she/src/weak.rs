//! Weak-form diagnostic for the height equation.
//!
//! The Cole-Hopf height `h = log Z` solves
//!
//! ```text
//! dh = 1/2 dxx h dt + 1/2 (dx h)^2 dt
//!      + (phi^eps + 1/4 Sha^{zeta/2}_L - 1/2 Sha^zeta_{2L}(0)) dt + dW,
//! ```
//!
//! so pairing with a test function `phi` (even at both endpoints) over a
//! time window `[s, t]` and moving everything except the noise to one side
//! must leave exactly `<W_t - W_s, phi>`. The residual returned here is the
//! noise pairing minus that combination, evaluated with lattice quadratures
//! and a trapezoid rule over the recorded snapshots; it vanishes at the
//! rate of the time discretization.

use okl_lattice::{boundary_potential, sha_comb, Field};

use crate::step::laplacian;
use crate::trajectory::{burgers_slope, cole_hopf, Trajectory};
use crate::SheError;

fn snapshot_index(traj: &Trajectory, t: f64) -> usize {
    traj.times
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - t)
                .abs()
                .partial_cmp(&(b.1 - t).abs())
                .expect("finite times")
        })
        .map(|(i, _)| i)
        .expect("non-empty trajectory")
}

/// Weak-form residual of the height equation over the snapshot window
/// closest to `[s, t]`. The times are snapped to recorded snapshots; the
/// time integral uses the trapezoid rule over all snapshots in between.
pub fn weak_form_residual(
    traj: &Trajectory,
    phi: &Field,
    s: f64,
    t: f64,
) -> Result<f64, SheError> {
    let cfg = &traj.config;
    let g = cfg.grid;
    let i_s = snapshot_index(traj, s);
    let i_t = snapshot_index(traj, t);
    if i_t <= i_s {
        return Err(SheError::InvalidConfig(format!(
            "window [{s}, {t}] does not span two distinct snapshots"
        )));
    }
    // Constant-in-time drift paired with phi.
    let mut constant = if cfg.potential_enabled {
        boundary_potential(cfg.params, cfg.moll, g)?
    } else {
        Field::zeros(g)
    };
    if cfg.noise_enabled {
        let zeta = cfg.moll.zeta;
        let sha0 = sha_comb(2.0 * g.l, zeta, 0.0)?;
        let extra = Field::from_fn(g, |x| {
            0.25 * sha_comb(g.l, zeta / 2.0, x).expect("validated scale") - 0.5 * sha0
        });
        constant = constant.axpy(1.0, &extra);
    }
    let const_pairing = constant.inner_half(phi);
    let lap_phi = laplacian(phi);

    // Trapezoid of 1/2 <h, dxx phi> + 1/2 <(dx h)^2, phi> over the window.
    let integrand = |i: usize| -> Result<f64, SheError> {
        let h = cole_hopf(&traj.z_fields[i])?;
        let slope = burgers_slope(&h);
        let sq = slope.map(|v| v * v);
        Ok(0.5 * h.inner_half(&lap_phi) + 0.5 * sq.inner_half(phi))
    };
    let mut time_integral = 0.0;
    for i in i_s..i_t {
        let dt = traj.times[i + 1] - traj.times[i];
        time_integral += 0.5 * dt * (integrand(i)? + integrand(i + 1)?);
    }
    let window = traj.times[i_t] - traj.times[i_s];
    time_integral += window * const_pairing;

    let h_t = cole_hopf(&traj.z_fields[i_t])?;
    let h_s = cole_hopf(&traj.z_fields[i_s])?;
    let dh_pairing = h_t.zip_with(&h_s, |a, b| a - b).inner_half(phi);
    let noise_pairing = traj.w_fields[i_t]
        .zip_with(&traj.w_fields[i_s], |a, b| a - b)
        .inner_half(phi);
    Ok(noise_pairing - (dh_pairing - time_integral))
}
