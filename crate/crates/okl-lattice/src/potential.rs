//! The mollified boundary potential carrying the slope pair `(u, v)`.

use crate::bump::bump_psi_scaled;
use crate::{BoundaryParams, Field, GridSpec, LatticeError, MollifierPair};

/// Lattice sample of the boundary potential
///
/// ```text
/// phi^eps_{u,v}(x) = -u (Sha_{2L} * psi^eps)(x) - v (Sha_{2L} * psi^eps)(x - L),
/// ```
///
/// where `Sha_{2L}` is the unmollified Dirac comb on `2L Z`, so each term is
/// the `2L`-periodization of the rescaled bump. The result is even about both
/// `x = 0` and `x = L` and integrates to `-(u+v)/2` over `[0, L]`.
///
/// Requires `eps < 1/L` (the construction's standing constraint) and
/// `eps < L/2` so the bumps at the two endpoints do not overlap.
pub fn boundary_potential(
    params: BoundaryParams,
    moll: MollifierPair,
    grid: GridSpec,
) -> Result<Field, LatticeError> {
    let l = grid.l;
    let eps = moll.eps;
    if eps >= 1.0 / l {
        return Err(LatticeError::InvalidScale(format!(
            "boundary potential needs eps < 1/L, got eps={eps}, L={l}"
        )));
    }
    if eps >= l / 2.0 {
        return Err(LatticeError::InvalidScale(format!(
            "boundary potential needs eps < L/2, got eps={eps}, L={l}"
        )));
    }
    let periodized = |x: f64| -> f64 {
        let mut acc = 0.0;
        for q in -2..=2 {
            acc += bump_psi_scaled(eps, x + q as f64 * 2.0 * l);
        }
        acc
    };
    Ok(Field::from_fn(grid, |x| {
        -params.u * periodized(x) - params.v * periodized(x - l)
    }))
}
