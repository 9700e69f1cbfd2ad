//! The energy-solution nonlinearity at discretization scale `kappa`.

use okl_lattice::{grad_kappa, Field};
use okl_she::{cole_hopf, Trajectory};

use crate::FluxError;

/// `int_s^t int_0^L phi(x) { (grad_kappa h_r(x))^2 - 1/kappa } dx dr`,
/// with the one-sided `kappa`-gradient switching to backward differences
/// on `[L - 2 kappa, L]`. Trapezoid in both time (over the snapshots
/// nearest `[s, t]`) and space; deterministic in `(h, kappa, phi)`.
pub fn discrete_nonlinearity_flux(
    traj: &Trajectory,
    kappa: f64,
    s: f64,
    t: f64,
    phi: &Field,
) -> Result<f64, FluxError> {
    let g = traj.config.grid;
    let dx = g.dx();
    let half = g.half_len();
    let spatial = |h: &Field| -> Result<f64, FluxError> {
        let grad = grad_kappa(h, kappa)?;
        let mut acc = 0.0;
        for (i, &gv) in grad.iter().enumerate() {
            let w = if i == 0 || i == half - 1 { 0.5 } else { 1.0 };
            let x_site = g.origin() + i;
            let phi_v = phi.values[x_site % g.n];
            acc += w * dx * phi_v * (gv * gv - 1.0 / kappa);
        }
        Ok(acc)
    };
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for (&r, z) in traj.times.iter().zip(&traj.z_fields) {
        if r < s - 1e-12 || r > t + 1e-12 {
            continue;
        }
        let v = spatial(&cole_hopf(z)?)?;
        if let Some((r0, v0)) = prev {
            total += 0.5 * (r - r0) * (v0 + v);
        }
        prev = Some((r, v));
    }
    if prev.is_none() {
        return Err(FluxError::InvalidInput(format!(
            "no snapshots inside [{s}, {t}]"
        )));
    }
    Ok(total)
}
