//! Fourier transform of the mollified boundary potential.

use okl_lattice::{psi_hat, BoundaryParams};

/// Fourier coefficient of the boundary potential on the doubled torus,
///
/// ```text
/// phi_hat(k) = -(1/2L) (u + (-1)^k v) psi_hat(eps k / L),
/// ```
///
/// valid for `eps < 4L/3` (so the periodized bumps at the two endpoints stay
/// disjoint on the torus). The coefficient is real because the potential is
/// even about the origin.
pub fn phi_hat(params: BoundaryParams, eps: f64, l: f64, k: i64) -> f64 {
    assert!(
        eps > 0.0 && eps < 4.0 * l / 3.0,
        "phi_hat needs 0 < eps < 4L/3, got eps={eps}, L={l}"
    );
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    -(params.u + sign * params.v) / (2.0 * l) * psi_hat(eps * k as f64 / l)
}
