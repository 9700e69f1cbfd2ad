//! Second-chaos boundary means and the windowed red-cherry variance.
//!
//! Three deterministic quantities with explicit limits:
//!
//! * the blue-cherry boundary mean `∫ phi^eps (l_b)^2 -> -(u^3+v^3)/6`,
//!   where `l_b(x) = -2 ∫_0^x phi^eps - (u+v) x / L` is the deterministic
//!   lollipop profile,
//! * the red-blue-red mean after the noise limit,
//!   `-(L^2/pi^2) sum_{j != 0} sum_k phi_hat(j)(phi_hat(j) - phi_hat(2k-j))
//!    / (k^2 + (j-k)^2)  ->  -(u^2+v^2) V_psi / 4`,
//! * the variance of the time-windowed red-cherry functional,
//!   `4 L^2 sum_{j,l} phi_hat(j)(phi_hat(j) - phi_hat(j-2l))
//!    Sha_hat(l) Sha_hat(j-l) I_{j,l}  ->  T (u^2+v^2) V_psi`,
//!   with `I_{j,l} = 2 (aT - 1 + e^{-aT}) / a^2` and
//!   `a = pi^2 (l^2 + (j-l)^2) / (2 L^2)`.
//!
//! The quadratically-decaying tails of the square parts are completed
//! analytically via [`inverse_quadratic_mode_sum`], so the default
//! truncations stay accurate uniformly over the mollification sequence.

use crate::phi::phi_hat;
use crate::vpsi::inverse_quadratic_mode_sum;
use crate::SpectralError;
use okl_lattice::{boundary_potential, sha_hat, BoundaryParams, GridSpec, MollifierPair};
use std::f64::consts::PI;

/// The deterministic lollipop profile `l_b` on the half-strip `[0, L]`,
/// sampled at the grid sites `0, dx, ..., L`.
pub fn bluecherry_profile(
    params: BoundaryParams,
    eps: f64,
    grid: GridSpec,
) -> Result<Vec<f64>, SpectralError> {
    let phi = boundary_potential(params, MollifierPair::new_unchecked(eps, eps / 200.0), grid)?;
    let half = phi.half_values();
    let dx = grid.dx();
    let slope = (params.u + params.v) / grid.l;
    let mut cum = 0.0;
    let mut out = Vec::with_capacity(half.len());
    out.push(0.0);
    for i in 1..half.len() {
        cum += 0.5 * dx * (half[i - 1] + half[i]);
        out.push(-2.0 * cum - slope * i as f64 * dx);
    }
    Ok(out)
}

/// The blue-cherry boundary mean `∫_0^L phi^eps (l_b)^2 dx` by lattice
/// quadrature; converges to `-(u^3 + v^3)/6` as `eps -> 0`.
pub fn bluecherry_mean(
    params: BoundaryParams,
    eps: f64,
    grid: GridSpec,
) -> Result<f64, SpectralError> {
    let phi = boundary_potential(params, MollifierPair::new_unchecked(eps, eps / 200.0), grid)?;
    let half = phi.half_values();
    let lb = bluecherry_profile(params, eps, grid)?;
    let dx = grid.dx();
    let m = half.len();
    let mut acc = 0.5 * (half[0] * lb[0] * lb[0] + half[m - 1] * lb[m - 1] * lb[m - 1]);
    for i in 1..m - 1 {
        acc += half[i] * lb[i] * lb[i];
    }
    Ok(acc * dx)
}

/// Table of `phi_hat` over `|m| <= m_max`, with the bump-transform clamp
/// making entries exactly zero far out.
fn phi_hat_table(params: BoundaryParams, eps: f64, l: f64, m_max: i64) -> Vec<f64> {
    (-m_max..=m_max)
        .map(|m| phi_hat(params, eps, l, m))
        .collect()
}

/// The red-blue-red boundary mean after the noise limit, truncated at `K`,
/// for each scale in `eps_sequence`. The `psi_hat(j)^2` part's quadratic
/// `k`-tail is completed exactly, so `K` only truncates the cross term and
/// the `j` range.
pub fn elkrbr_mean_limit(
    params: BoundaryParams,
    l: f64,
    k_max: i64,
    eps_sequence: &[f64],
) -> Vec<f64> {
    eps_sequence
        .iter()
        .map(|&eps| {
            let m_max = 3 * k_max;
            let tab = phi_hat_table(params, eps, l, m_max);
            let at = |m: i64| tab[(m + m_max) as usize];
            let mut acc = 0.0;
            for j in -k_max..=k_max {
                if j == 0 {
                    continue;
                }
                let pj = at(j);
                if pj == 0.0 {
                    continue;
                }
                let mut row = pj * inverse_quadratic_mode_sum(j);
                for k in -k_max..=k_max {
                    let q = at(2 * k - j);
                    if q == 0.0 {
                        continue;
                    }
                    row -= q / (k * k + (j - k) * (j - k)) as f64;
                }
                acc += pj * row;
            }
            -l * l / (PI * PI) * acc
        })
        .collect()
}

/// Robust evaluation of the time-window kernel
/// `I(a, t) = 2 (a t - 1 + e^{-a t}) / a^2` for `a > 0`.
fn window_kernel(a: f64, t: f64) -> f64 {
    let at = a * t;
    if at < 1e-3 {
        // series: t^2 (1 - at/3 + (at)^2/12 - ...)
        t * t * (1.0 - at / 3.0 + at * at / 12.0)
    } else {
        2.0 * (at + (-at).exp_m1()) / (a * a)
    }
}

/// Shared driver for the two red-cherry variance routes. `weight(l, j-l)`
/// is `4 L^2 Sha_hat(l) Sha_hat(j-l)` at finite `zeta` and `1` in the
/// noise limit; the analytic tail completion of the square part is applied
/// only in the limit route, where the weight really is constant.
fn cherry_variance_sum(
    params: BoundaryParams,
    l: f64,
    t: f64,
    k_max: i64,
    eps: f64,
    zeta: Option<f64>,
) -> f64 {
    let m_max = 3 * k_max;
    let tab = phi_hat_table(params, eps, l, m_max);
    let at = |m: i64| tab[(m + m_max) as usize];
    let a_of = |j: i64, ell: i64| {
        PI * PI * (ell * ell + (j - ell) * (j - ell)) as f64 / (2.0 * l * l)
    };
    let sh: Option<Vec<f64>> = zeta.map(|z| {
        (-2 * k_max..=2 * k_max)
            .map(|m| sha_hat(l, z, m))
            .collect()
    });
    let weight = |j: i64, ell: i64| match &sh {
        None => 1.0,
        Some(tbl) => {
            let s1 = tbl[(ell + 2 * k_max) as usize];
            let s2 = tbl[(j - ell + 2 * k_max) as usize];
            4.0 * l * l * s1 * s2
        }
    };
    let mut acc = 0.0;
    for j in -k_max..=k_max {
        let pj = at(j);
        if pj == 0.0 {
            continue;
        }
        let mut row = 0.0;
        let mut partial_quadratic = 0.0; // sum_{|l| <= K} 1/(l^2+(j-l)^2)
        for ell in -k_max..=k_max {
            if ell == 0 {
                continue; // the combined summand vanishes identically
            }
            let a = a_of(j, ell);
            row += weight(j, ell) * (pj - at(j - 2 * ell)) * window_kernel(a, t);
            partial_quadratic += 1.0 / (ell * ell + (j - ell) * (j - ell)) as f64;
        }
        if zeta.is_none() {
            // |l| > K tail of the square part: I(a,t) ~ 2t/a there.
            let mut s_inf = inverse_quadratic_mode_sum(j);
            if j != 0 {
                s_inf -= 1.0 / (j * j) as f64; // remove the l = 0 term
            }
            row += pj * (4.0 * t * l * l / (PI * PI)) * (s_inf - partial_quadratic);
        }
        acc += pj * row;
    }
    acc
}

/// Variance of the windowed red-cherry functional in the noise limit,
/// truncated at `K`, for each scale in `eps_sequence`; converges to
/// `T (u^2 + v^2) V_psi` as `eps -> 0`.
pub fn cherry_variance_limit(
    params: BoundaryParams,
    l: f64,
    t: f64,
    k_max: i64,
    eps_sequence: &[f64],
) -> Vec<f64> {
    eps_sequence
        .iter()
        .map(|&eps| cherry_variance_sum(params, l, t, k_max, eps, None))
        .collect()
}

/// Finite-`zeta` variance of the windowed red-cherry functional, truncated
/// at `K`. Must agree with [`cherry_variance_limit`] as `zeta -> 0` at
/// fixed `eps`; the pair of routes cross-checks both transcriptions.
pub fn cherry_variance_finite(
    params: BoundaryParams,
    l: f64,
    t: f64,
    k_max: i64,
    eps: f64,
    zeta: f64,
) -> f64 {
    cherry_variance_sum(params, l, t, k_max, eps, Some(zeta))
}
