//! Cameron-Martin weights for constant-in-time drift changes of measure.

use okl_lattice::Field;
use okl_she::Trajectory;

use crate::MeasureError;

/// The Cameron-Martin weight `exp(<phi, W_T - W_0> - T |phi|^2 / 2)` of the
/// drift tilt `dW -> dW + phi dt`, with the pairing and the squared norm
/// both taken over `[0, L]` and the noise read from the trajectory's
/// logged cumulative increments.
///
/// Under this tilt the ensemble gains the extra drift `Z phi dt` (up to the
/// mollification scale), so weighted expectations against the base run
/// reproduce runs with `phi` added to the potential.
pub fn girsanov_weight(traj: &Trajectory, phi: &Field) -> Result<f64, MeasureError> {
    if !traj.config.noise_enabled || traj.w_fields.len() != traj.times.len() {
        return Err(MeasureError::MissingNoiseLog(
            "trajectory carries no usable noise record".into(),
        ));
    }
    let n = traj.times.len() - 1;
    let pairing = traj.w_fields[n]
        .zip_with(&traj.w_fields[0], |a, b| a - b)
        .inner_half(phi);
    let t = traj.times[n] - traj.times[0];
    let weight = (pairing - 0.5 * t * phi.inner_half(phi)).exp();
    if !weight.is_finite() {
        return Err(MeasureError::NumericRange(format!(
            "Cameron-Martin weight overflowed: pairing {pairing}"
        )));
    }
    Ok(weight)
}
