//! Monte Carlo check of the Gaussian integration-by-parts identity
//!
//! For a smooth positive profile `Z` on `[0, L]` with `Z'(0) = Z'(L) = 0`,
//! a standard Brownian motion `B` with `B(0) = 0`, the tilted path
//! `B_v(x) = B(x) + v x`, and the exponential integrals
//! `I_k(y) = int_0^y Z^(k)(x) exp(B_v(x)) dx`, the identity reads
//!
//! ```text
//! E[I_0(L)^{-u-v-1} I_2(L)]
//!   = -(v + 1/2) Z(L) E[I_0^{-u-v-1} e^{B_v(L)}]
//!     - (u + 1/2) Z(0) E[I_0^{-u-v-1}]
//!     + (u^2/3 + v^2/3 - u v/3 - 1/12) E[I_0^{-u-v}]
//!     + (u + v + 1) E[I_0^{-u-v-2} int_0^L Z^2 e^{2 B_v}].
//! ```
//!
//! The check estimates the left side minus the right side over a common
//! ensemble of Brownian paths, so the reported standard error reflects
//! the residual directly.

use okl_lattice::{BoundaryParams, GridSpec};
use okl_noise::NoiseStream;

use crate::ItoError;

/// One instance of the integration-by-parts check: a positive profile
/// with vanishing endpoint derivatives, sampled with its first two
/// derivatives on the half-strip lattice of `grid`.
#[derive(Debug, Clone)]
pub struct IbpCase {
    pub grid: GridSpec,
    pub params: BoundaryParams,
    pub n_samples: usize,
    z: Vec<f64>,
    d2z: Vec<f64>,
}

impl IbpCase {
    /// Builds a case from the profile and its first two derivatives.
    /// Validates positivity, the Neumann conditions `|Z'| <= 1e-10` at
    /// both endpoints, and the consistency of the supplied derivative
    /// with centered lattice differences of the profile.
    pub fn new(
        grid: GridSpec,
        params: BoundaryParams,
        n_samples: usize,
        z: impl Fn(f64) -> f64,
        dz: impl Fn(f64) -> f64,
        d2z: impl Fn(f64) -> f64,
    ) -> Result<Self, ItoError> {
        if n_samples == 0 {
            return Err(ItoError::InvalidInput("n_samples must be >= 1".into()));
        }
        let m = grid.half_len();
        let dx = grid.dx();
        let xs: Vec<f64> = (0..m).map(|j| j as f64 * dx).collect();
        let zs: Vec<f64> = xs.iter().map(|&x| z(x)).collect();
        if zs.iter().any(|&v| !(v > 0.0)) {
            return Err(ItoError::InvalidInput(
                "profile must be strictly positive on [0, L]".into(),
            ));
        }
        let l = *xs.last().unwrap();
        for &x in &[0.0, l] {
            if dz(x).abs() > 1e-10 {
                return Err(ItoError::InvalidInput(format!(
                    "profile derivative {} at x = {x} violates the Neumann condition",
                    dz(x)
                )));
            }
        }
        // Centered differences agree with dz to O(dx^2) for a smooth
        // profile; a loose multiple of dx^2 catches inconsistent inputs.
        let scale = zs.iter().cloned().fold(0.0, f64::max) + 1.0;
        let tol = 50.0 * dx * dx * scale;
        for j in 1..m - 1 {
            let num = (zs[j + 1] - zs[j - 1]) / (2.0 * dx);
            if (num - dz(xs[j])).abs() > tol {
                return Err(ItoError::InvalidInput(format!(
                    "supplied derivative {} disagrees with the lattice difference {num} at x = {}",
                    dz(xs[j]),
                    xs[j]
                )));
            }
        }
        Ok(Self {
            grid,
            params,
            n_samples,
            z: zs,
            d2z: xs.iter().map(|&x| d2z(x)).collect(),
        })
    }
}

/// Monte Carlo estimate of (left side − right side) of the identity and
/// its standard error, over `case.n_samples` Brownian paths from `stream`.
pub fn ibp_residual(case: &IbpCase, stream: &mut NoiseStream) -> Result<(f64, f64), ItoError> {
    let g = case.grid;
    let m = g.half_len();
    let dx = g.dx();
    let (u, v) = (case.params.u, case.params.v);
    let p = u + v;
    let coef = u * u / 3.0 + v * v / 3.0 - u * v / 3.0 - 1.0 / 12.0;
    let (z0, zl) = (case.z[0], case.z[m - 1]);

    let mut diffs = Vec::with_capacity(case.n_samples);
    for _ in 0..case.n_samples {
        let b = stream.brownian_half_path();
        let mut i0 = 0.0;
        let mut i2 = 0.0;
        let mut j2 = 0.0;
        let mut bv_l = 0.0;
        for j in 0..m {
            let w = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
            let bv = b[j] + v * j as f64 * dx;
            let e = bv.exp();
            i0 += w * dx * case.z[j] * e;
            i2 += w * dx * case.d2z[j] * e;
            j2 += w * dx * case.z[j] * case.z[j] * e * e;
            if j == m - 1 {
                bv_l = bv;
            }
        }
        let ln_a = i0.ln();
        let lhs = (-(p + 1.0) * ln_a).exp() * i2;
        let rhs = -(v + 0.5) * zl * (-(p + 1.0) * ln_a + bv_l).exp()
            - (u + 0.5) * z0 * (-(p + 1.0) * ln_a).exp()
            + coef * (-p * ln_a).exp()
            + (p + 1.0) * (-(p + 2.0) * ln_a).exp() * j2;
        let d = lhs - rhs;
        if !d.is_finite() {
            return Err(ItoError::NumericRange(format!(
                "residual sample is not finite: lhs = {lhs}, rhs = {rhs}, I0 = {i0}"
            )));
        }
        diffs.push(d);
    }
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> GridSpec {
        GridSpec::new(1.0, 256).unwrap()
    }

    fn stream(seed: u64) -> NoiseStream {
        NoiseStream::new(seed, 0, grid(), 1e-3)
    }

    fn cosine_case(u: f64, v: f64, n: usize) -> IbpCase {
        let l = grid().l;
        IbpCase::new(
            grid(),
            BoundaryParams::new(u, v),
            n,
            move |x| 2.0 + (PI * x / l).cos(),
            move |x| -(PI / l) * (PI * x / l).sin(),
            move |x| -(PI / l) * (PI / l) * (PI * x / l).cos(),
        )
        .unwrap()
    }

    #[test]
    fn constant_profile_balances_the_right_side() {
        // Z = 1 kills the left side entirely; the remaining combination
        // of right-side terms must average to zero.
        let case = IbpCase::new(
            grid(),
            BoundaryParams::new(0.5, 1.0 / 3.0),
            100_000,
            |_| 1.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap();
        let (r, se) = ibp_residual(&case, &mut stream(11)).unwrap();
        assert!(r.abs() <= 3.0 * se, "residual {r} vs se {se}");
    }

    #[test]
    fn cosine_profile_satisfies_the_identity() {
        let (r, se) = ibp_residual(&cosine_case(1.0, 0.0, 100_000), &mut stream(12)).unwrap();
        assert!(r.abs() <= 3.0 * se, "residual {r} vs se {se}");
    }

    #[test]
    fn zero_slopes_are_a_genuine_check() {
        let (r, se) = ibp_residual(&cosine_case(0.0, 0.0, 100_000), &mut stream(13)).unwrap();
        assert!(r.abs() <= 3.0 * se, "residual {r} vs se {se}");
    }

    #[test]
    fn relabeling_the_endpoints_is_a_symmetry() {
        // (u, v) <-> (v, u) together with Z(x) <-> Z(L - x) relabels the
        // interval; both residuals estimate zero.
        let n = 50_000;
        let l = grid().l;
        let (r1, se1) = ibp_residual(&cosine_case(1.0, 0.25, n), &mut stream(14)).unwrap();
        let mirrored = IbpCase::new(
            grid(),
            BoundaryParams::new(0.25, 1.0),
            n,
            move |x| 2.0 + (PI * (l - x) / l).cos(),
            move |x| (PI / l) * (PI * (l - x) / l).sin(),
            move |x| -(PI / l) * (PI / l) * (PI * (l - x) / l).cos(),
        )
        .unwrap();
        let (r2, se2) = ibp_residual(&mirrored, &mut stream(15)).unwrap();
        let combined = (se1 * se1 + se2 * se2).sqrt();
        assert!(
            (r1 - r2).abs() <= 5.0 * combined,
            "residuals {r1} and {r2} (combined se {combined})"
        );
    }

    #[test]
    fn standard_error_scales_as_inverse_root_n() {
        let (_, se_small) = ibp_residual(&cosine_case(1.0, 0.0, 2_000), &mut stream(16)).unwrap();
        let (_, se_large) = ibp_residual(&cosine_case(1.0, 0.0, 20_000), &mut stream(17)).unwrap();
        let ratio = se_small / se_large;
        assert!((2.0..5.0).contains(&ratio), "se ratio {ratio}");
    }

    #[test]
    fn invalid_profiles_are_rejected() {
        // Nonpositive profile.
        assert!(IbpCase::new(
            grid(),
            BoundaryParams::new(0.0, 0.0),
            10,
            |x| x - 0.5,
            |_| 1.0,
            |_| 0.0
        )
        .is_err());
        // Endpoint derivative violates the Neumann condition.
        assert!(IbpCase::new(
            grid(),
            BoundaryParams::new(0.0, 0.0),
            10,
            |x| 1.0 + x,
            |_| 1.0,
            |_| 0.0
        )
        .is_err());
        // Supplied derivative inconsistent with the profile.
        assert!(IbpCase::new(
            grid(),
            BoundaryParams::new(0.0, 0.0),
            10,
            |x| 2.0 + (PI * x).cos(),
            |_| 0.0,
            |_| 0.0
        )
        .is_err());
    }

    #[test]
    fn overflowing_moments_report_a_numeric_range_error() {
        // A tiny profile with a large power sends I0^{-u-v-2} past the
        // double-precision range.
        let case = IbpCase::new(
            grid(),
            BoundaryParams::new(120.0, 0.0),
            10,
            |_| 1e-3,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap();
        let err = ibp_residual(&case, &mut stream(18));
        assert!(matches!(err, Err(ItoError::NumericRange(_))), "{err:?}");
    }
}
