//! The first-chaos renormalization field.

use okl_lattice::{sha_comb, Field, GridSpec};

use crate::SheError;

/// The spatially inhomogeneous renormalization field
///
/// ```text
/// C1_zeta(x) = Sha^zeta_{2L}(0) - 1/2 Sha^{zeta/2}_L(x),
/// ```
///
/// the equal-point variance of the stationary mollified slope line. The
/// inhomogeneity is the reflection term: it is active only within `zeta/2`
/// of `x = 0` and `x = L` (mod `2L`) and vanishes in the bulk.
pub fn renorm_c1(grid: GridSpec, zeta: f64) -> Result<Field, SheError> {
    if !(zeta > 0.0) || zeta >= grid.l {
        return Err(SheError::InvalidConfig(format!(
            "renorm_c1 needs 0 < zeta < L, got zeta={zeta}, L={}",
            grid.l
        )));
    }
    let sha0 = sha_comb(2.0 * grid.l, zeta, 0.0)?;
    let mut values = Vec::with_capacity(grid.n);
    for j in 0..grid.n {
        values.push(sha0 - 0.5 * sha_comb(grid.l, zeta / 2.0, grid.x(j))?);
    }
    Ok(Field { grid, values })
}
