//! Mollified Dirac combs and their Fourier coefficients.

use crate::bump::{r_scaled, rho_hat_line};
use crate::LatticeError;
use std::f64::consts::PI;

/// The mollified Dirac comb `Sha^zeta_M(x) = sum_{q in M Z} R^zeta(x + q)`,
/// where `R^zeta` is the rescaled self-convolution of the noise bump.
///
/// `M`-periodic, even, nonnegative. Since `R^zeta` is supported in
/// `(-zeta, zeta)` the sum over `|q| <= 3` periods is exact for `zeta < M`.
pub fn sha_comb(m: f64, zeta: f64, x: f64) -> Result<f64, LatticeError> {
    if !(zeta > 0.0) || zeta >= m {
        return Err(LatticeError::InvalidScale(format!(
            "comb needs 0 < zeta < M, got zeta={zeta}, M={m}"
        )));
    }
    let mut acc = 0.0;
    for q in -3..=3 {
        acc += r_scaled(zeta, x + q as f64 * m);
    }
    Ok(acc)
}

/// Fourier coefficient of the comb on the doubled torus,
/// `sha_hat(L, zeta, k) = (1/2L) * rho_hat(zeta pi k / L)^2`,
/// in the normalization `f(x) = sum_k f_hat(k) e^{i pi k x / L}`.
///
/// Tends to `1/(2L)` per mode as `zeta -> 0`.
pub fn sha_hat(l: f64, zeta: f64, k: i64) -> f64 {
    let r = rho_hat_line(zeta * PI * k as f64 / l);
    r * r / (2.0 * l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bump::r_scaled;
    use crate::quad::adaptive_simpson;
    use approx::assert_abs_diff_eq;

    #[test]
    fn comb_is_periodic_and_even() {
        let (m, zeta) = (2.0, 0.25);
        for &x in &[0.0, 0.1, 0.7, 1.3] {
            let v = sha_comb(m, zeta, x).unwrap();
            assert_abs_diff_eq!(sha_comb(m, zeta, x + m).unwrap(), v, epsilon = 1e-13);
            assert_abs_diff_eq!(sha_comb(m, zeta, -x).unwrap(), v, epsilon = 1e-13);
        }
    }

    #[test]
    fn comb_rescaling_identity() {
        // Sha^zeta_{2L}(2x) = (1/2) Sha^{zeta/2}_L(x) pointwise.
        let (l, zeta) = (1.0, 0.2);
        for i in 0..40 {
            let x = -1.0 + i as f64 * 0.05;
            let lhs = sha_comb(2.0 * l, zeta, 2.0 * x).unwrap();
            let rhs = 0.5 * sha_comb(l, zeta / 2.0, x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-11);
        }
    }

    #[test]
    fn comb_peak_is_kernel_peak() {
        // For zeta < L only the q = 0 term contributes at x = 0, and the
        // value is the direct convolution quadrature of rho^zeta * rho^zeta
        // at zero.
        let (l, zeta) = (1.0, 0.3);
        let direct = adaptive_simpson(
            |y| {
                crate::bump::bump_rho_scaled(zeta, y) * crate::bump::bump_rho_scaled(zeta, -y)
            },
            -zeta,
            zeta,
            1e-12,
        );
        assert_abs_diff_eq!(sha_comb(2.0 * l, zeta, 0.0).unwrap(), direct, epsilon = 1e-9);
        assert_abs_diff_eq!(direct, r_scaled(zeta, 0.0), epsilon = 1e-9);
    }

    #[test]
    fn comb_rejects_bad_scale() {
        assert!(sha_comb(1.0, 1.0, 0.0).is_err());
        assert!(sha_comb(1.0, -0.1, 0.0).is_err());
    }

    #[test]
    fn sha_hat_inverts_to_comb() {
        // Fourier inversion at a point: sum_k sha_hat e^{i pi k x / L}
        // recovers the comb.
        let (l, zeta) = (1.0, 0.125);
        for &x in &[0.0, 0.03, 0.07] {
            let mut acc = 0.0;
            for k in -4000i64..=4000 {
                acc += sha_hat(l, zeta, k) * (PI * k as f64 * x / l).cos();
            }
            assert_abs_diff_eq!(acc, sha_comb(2.0 * l, zeta, x).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn sha_hat_tends_to_uniform_mode_weight() {
        // Per-mode convergence to 1/(2L). The deviation is quadratic in
        // zeta*k, so the uniform 1e-6 level is reached at zeta = 2^-13 for
        // all modes k <= 8 (at zeta = 2^-10 the k = 8 deviation is ~1e-5).
        let l = 1.0;
        for k in 0..=8 {
            let v = sha_hat(l, 2f64.powi(-10), k);
            assert_abs_diff_eq!(v, 1.0 / (2.0 * l), epsilon = 2e-5);
            let v = sha_hat(l, 2f64.powi(-13), k);
            assert_abs_diff_eq!(v, 1.0 / (2.0 * l), epsilon = 1e-6);
        }
    }
}
