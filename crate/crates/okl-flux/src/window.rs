//! The smooth-in-time indicator window `Psi^eps`.

use okl_lattice::psi_cdf;

use crate::FluxError;

/// `Psi^eps_{s,t;r} = int_{s+eps^2}^{t-eps^2} psi^{eps^2}(q - r) dq`,
/// evaluated exactly through the cumulative distribution of `psi`.
///
/// The window is a smooth approximation of the indicator of `[s, t]`:
/// it equals 1 on `[s + 2 eps^2, t - 2 eps^2]`, vanishes outside `(s, t)`,
/// and lies in `[0, 1]` everywhere.
pub fn window(s: f64, t: f64, eps: f64, r: f64) -> Result<f64, FluxError> {
    if !(s < t) || !(eps > 0.0) {
        return Err(FluxError::InvalidScale(format!(
            "window needs s < t and eps > 0, got s={s}, t={t}, eps={eps}"
        )));
    }
    if 4.0 * eps * eps >= t - s {
        return Err(FluxError::InvalidScale(format!(
            "window wider than the interval: 4 eps^2 = {} vs t - s = {}",
            4.0 * eps * eps,
            t - s
        )));
    }
    let e2 = eps * eps;
    // With z = (q - r) / eps^2 the integral is the psi-CDF increment.
    let lo = (s + e2 - r) / e2;
    let hi = (t - e2 - r) / e2;
    Ok(psi_cdf(hi) - psi_cdf(lo))
}
