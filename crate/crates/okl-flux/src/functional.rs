//! The boundary space-time distribution `X^eps` and the renormalized flux
//! functional it defines along a trajectory.

use okl_lattice::{boundary_potential, sha_comb, BoundaryParams, Field, MollifierPair};
use okl_she::{burgers_slope, cole_hopf, Trajectory};
use serde::Serialize;

use crate::window::window;
use crate::FluxError;

/// One trajectory's renormalized boundary-flux value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FluxSample {
    pub value: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub params: BoundaryParams,
    pub moll: MollifierPair,
}

/// Checks that a snapshot grid resolves the `eps^2` window: spacing must
/// not exceed `eps^2 / 4`.
fn check_cadence(times: &[f64], eps: f64) -> Result<(), FluxError> {
    let limit = eps * eps / 4.0;
    for w in times.windows(2) {
        let gap = w[1] - w[0];
        if gap > limit * (1.0 + 1e-9) {
            return Err(FluxError::Sampling(format!(
                "time spacing {gap} exceeds eps^2/4 = {limit}"
            )));
        }
    }
    Ok(())
}

/// `X^eps_{u,v;s,t}(g) = int Psi^eps_{s,t;r} <phi^eps_{u,v}, g_r> dr`,
/// trapezoid in time over the provided samples, lattice quadrature over
/// `[0, L]` in space. Exactly linear in `g`.
pub fn x_functional(
    times: &[f64],
    fields: &[Field],
    params: BoundaryParams,
    moll: MollifierPair,
    s: f64,
    t: f64,
) -> Result<f64, FluxError> {
    if times.len() != fields.len() || times.len() < 2 {
        return Err(FluxError::InvalidInput(format!(
            "need matching times/fields with >= 2 samples, got {} and {}",
            times.len(),
            fields.len()
        )));
    }
    check_cadence(times, moll.eps)?;
    let grid = fields[0].grid;
    let phi = boundary_potential(params, moll, grid)?;
    let weighted: Vec<f64> = times
        .iter()
        .zip(fields)
        .map(|(&r, g)| window(s, t, moll.eps, r).map(|w| w * phi.inner_half(g)))
        .collect::<Result<_, _>>()?;
    let mut acc = 0.0;
    for (w, pair) in times.windows(2).zip(weighted.windows(2)) {
        acc += 0.5 * (w[1] - w[0]) * (pair[0] + pair[1]);
    }
    Ok(acc)
}

/// The renormalized flux functional along a trajectory, with the boundary
/// parameters and mollifiers overridden (used for symmetry checks).
pub fn flux_b_tilde_with(
    traj: &Trajectory,
    params: BoundaryParams,
    s: f64,
    t: f64,
) -> Result<FluxSample, FluxError> {
    let cfg = &traj.config;
    let g = cfg.grid;
    let zeta = cfg.moll.zeta;
    let sha0 = sha_comb(2.0 * g.l, zeta, 0.0)?;
    let renorm = Field::from_fn(g, |x| {
        -sha0 + 0.5 * sha_comb(g.l, zeta / 2.0, x).expect("validated scale") + 1.0 / 12.0
    });
    let fields: Vec<Field> = traj
        .z_fields
        .iter()
        .map(|z| {
            let u = burgers_slope(&cole_hopf(z)?);
            Ok(u.map(|v| v * v).axpy(1.0, &renorm))
        })
        .collect::<Result<_, FluxError>>()?;
    let value = x_functional(&traj.times, &fields, params, cfg.moll, s, t)?;
    if !value.is_finite() {
        return Err(FluxError::InvalidInput(format!(
            "flux value is not finite: {value}"
        )));
    }
    Ok(FluxSample {
        value,
        t_start: s,
        t_end: t,
        params,
        moll: cfg.moll,
    })
}

/// `B~^{eps,zeta}_{u,v;s,t}`: the space-time boundary average of
/// `u^2 - Sha^zeta_{2L}(0) + 1/2 Sha^{zeta/2}_L + 1/12` along the
/// trajectory, with parameters read from the trajectory's configuration.
pub fn flux_b_tilde(traj: &Trajectory, s: f64, t: f64) -> Result<FluxSample, FluxError> {
    flux_b_tilde_with(traj, traj.config.params, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use okl_lattice::GridSpec;
    use okl_she::{run_trajectory, Scheme, SimConfig};

    fn grid() -> GridSpec {
        GridSpec::new(1.0, 64).unwrap()
    }

    fn fine_grid() -> GridSpec {
        GridSpec::new(1.0, 512).unwrap()
    }

    fn moll() -> MollifierPair {
        MollifierPair::new_unchecked(0.25, 0.0625)
    }

    fn dense_times(s: f64, t: f64, k: usize) -> Vec<f64> {
        (0..=k).map(|i| s + (t - s) * i as f64 / k as f64).collect()
    }

    #[test]
    fn constant_input_sees_the_potential_mass_times_window_mass() {
        // <phi^eps, c> = -c (u+v)/2 and int Psi dr = t - s - 2 eps^2.
        // The boundary bump spans ~eps/dx lattice sites, so the spatial
        // quadrature of its mass needs a fine grid to reach 2e-3 relative.
        let g = fine_grid();
        let params = BoundaryParams::new(0.7, 0.4);
        let (s, t) = (0.0, 1.0);
        let c = 1.3;
        let times = dense_times(s, t, 400);
        let fields: Vec<Field> = times.iter().map(|_| Field::from_fn(g, |_| c)).collect();
        let x = x_functional(&times, &fields, params, moll(), s, t).unwrap();
        let eps = moll().eps;
        let expected = -c * (params.u + params.v) / 2.0 * (t - s - 2.0 * eps * eps);
        assert!(
            (x - expected).abs() <= 2e-3 * expected.abs(),
            "x = {x}, expected {expected}"
        );
    }

    #[test]
    fn input_supported_away_from_the_boundary_vanishes() {
        // phi^eps lives within 3 eps / 4 of the endpoints, so a bump in
        // the middle of the interval pairs to exactly zero.
        let g = grid();
        let times = dense_times(0.0, 1.0, 100);
        let fields: Vec<Field> = times
            .iter()
            .map(|_| Field::from_fn(g, |x| okl_lattice::bump_rho_scaled(0.2, x - 0.5)))
            .collect();
        let x = x_functional(&times, &fields, BoundaryParams::new(1.0, 0.5), moll(), 0.0, 1.0)
            .unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn functional_is_linear() {
        let g = grid();
        let params = BoundaryParams::new(0.9, -0.2);
        let times = dense_times(0.0, 1.0, 80);
        let g1: Vec<Field> = times
            .iter()
            .map(|&r| Field::from_fn(g, |x| (x + r).cos()))
            .collect();
        let g2: Vec<Field> = times
            .iter()
            .map(|&r| Field::from_fn(g, |x| x * x - r))
            .collect();
        let combo: Vec<Field> = g1
            .iter()
            .zip(&g2)
            .map(|(a, b)| a.map(|v| 2.5 * v).axpy(-1.5, b))
            .collect();
        let xa = x_functional(&times, &g1, params, moll(), 0.0, 1.0).unwrap();
        let xb = x_functional(&times, &g2, params, moll(), 0.0, 1.0).unwrap();
        let xc = x_functional(&times, &combo, params, moll(), 0.0, 1.0).unwrap();
        assert!(
            (xc - (2.5 * xa - 1.5 * xb)).abs() <= 1e-12 * xc.abs().max(1.0),
            "xc = {xc} vs {}",
            2.5 * xa - 1.5 * xb
        );
    }

    #[test]
    fn sparse_sampling_is_rejected() {
        let g = grid();
        let times = dense_times(0.0, 1.0, 20); // spacing 0.05 > eps^2/4
        let fields: Vec<Field> = times.iter().map(|_| Field::zeros(g)).collect();
        let err = x_functional(&times, &fields, BoundaryParams::new(1.0, 0.0), moll(), 0.0, 1.0);
        assert!(matches!(err, Err(FluxError::Sampling(_))));
    }

    fn traj_cfg(u: f64, v: f64) -> SimConfig {
        let mut cfg = SimConfig::new(
            grid(),
            BoundaryParams::new(u, v),
            moll(),
            5e-4,
            0.3,
            Scheme::SemiImplicit,
            71,
            0,
        );
        cfg.snapshot_cadence = 0.01; // well under eps^2 / 4
        cfg
    }

    #[test]
    fn zero_slopes_give_zero_flux_exactly() {
        let traj = run_trajectory(&traj_cfg(0.0, 0.0)).unwrap();
        let sample = flux_b_tilde(&traj, 0.0, 0.3).unwrap();
        assert_eq!(sample.value, 0.0);
    }

    #[test]
    fn flux_is_odd_in_the_potential_sign() {
        let traj = run_trajectory(&traj_cfg(1.0, 0.5)).unwrap();
        let plus = flux_b_tilde(&traj, 0.0, 0.3).unwrap();
        let minus =
            flux_b_tilde_with(&traj, BoundaryParams::new(-1.0, -0.5), 0.0, 0.3).unwrap();
        assert!(
            (plus.value + minus.value).abs() <= 1e-12 * plus.value.abs().max(1.0),
            "{} vs {}",
            plus.value,
            minus.value
        );
    }

    #[test]
    fn flux_replays_bit_identically() {
        let traj = run_trajectory(&traj_cfg(0.8, 0.3)).unwrap();
        let a = flux_b_tilde(&traj, 0.0, 0.3).unwrap();
        let b = flux_b_tilde(&traj, 0.0, 0.3).unwrap();
        assert_eq!(a.value, b.value);
    }
}
