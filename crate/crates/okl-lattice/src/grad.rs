//! Lattice gradients: centered differences on the torus and the one-sided
//! scale-`kappa` gradient used by the energy-solution nonlinearity.

use crate::{Field, GridSpec, LatticeError};

/// Centered difference `(h_{j+1} - h_{j-1}) / (2 dx)` on the periodic lattice.
pub fn centered_gradient(h: &Field) -> Field {
    let g = h.grid;
    let values = (0..g.n)
        .map(|j| (h.at(j as isize + 1) - h.at(j as isize - 1)) / (2.0 * g.dx()))
        .collect();
    Field { grid: g, values }
}

/// One-sided discrete gradient at scale `kappa` on the half-strip `[0, L]`:
/// forward difference `(h(x + kappa) - h(x)) / kappa` for `x <= L - 2 kappa`,
/// backward difference `(h(x) - h(x - kappa)) / kappa` beyond the switch
/// point. `kappa` is rounded to the nearest positive multiple of `dx`.
///
/// Input and output are half-strip sample vectors of length `n/2 + 1`; the
/// torus field `h` supplies values past the endpoints where needed.
pub fn grad_kappa(h: &Field, kappa: f64) -> Result<Vec<f64>, LatticeError> {
    let g: GridSpec = h.grid;
    let dx = g.dx();
    if kappa < dx {
        return Err(LatticeError::InvalidScale(format!(
            "grad_kappa needs kappa >= dx, got kappa={kappa}, dx={dx}"
        )));
    }
    let m = (kappa / dx).round() as isize; // kappa in lattice units
    let kap = m as f64 * dx;
    let n2 = g.n as isize / 2;
    let o = g.origin() as isize;
    let out = (0..=n2)
        .map(|i| {
            let x = i as f64 * dx;
            if x <= g.l - 2.0 * kap {
                (h.at(o + i + m) - h.at(o + i)) / kap
            } else {
                (h.at(o + i) - h.at(o + i - m)) / kap
            }
        })
        .collect();
    Ok(out)
}
