//! Even and odd extension of half-strip samples to the doubled torus.

use crate::{Field, GridSpec, LatticeError};

fn check_half_len(grid: GridSpec, half: &[f64]) -> Result<(), LatticeError> {
    if half.len() != grid.half_len() {
        return Err(LatticeError::LengthMismatch {
            expected: grid.half_len(),
            got: half.len(),
        });
    }
    Ok(())
}

/// Even extension: given samples `f_i` at `x = i dx`, `i = 0..=n/2`, returns
/// the torus field with `g(-x) = g(x)`.
pub fn even_extend(grid: GridSpec, half: &[f64]) -> Result<Field, LatticeError> {
    check_half_len(grid, half)?;
    let n2 = grid.n / 2;
    let mut values = vec![0.0; grid.n];
    for i in 0..=n2 {
        values[grid.half_to_full(i)] = half[i];
    }
    for i in 1..n2 {
        // x = -i dx mirrors x = i dx.
        values[n2 - i] = half[i];
    }
    Field::from_values(grid, values)
}

/// Odd extension: `g(-x) = -g(x)`, with `g(0) = g(±L) = 0` enforced (the
/// values forced by antisymmetry plus periodicity, regardless of the input
/// endpoint samples).
pub fn odd_extend(grid: GridSpec, half: &[f64]) -> Result<Field, LatticeError> {
    check_half_len(grid, half)?;
    let n2 = grid.n / 2;
    let mut values = vec![0.0; grid.n];
    for i in 1..n2 {
        values[grid.half_to_full(i)] = half[i];
        values[n2 - i] = -half[i];
    }
    values[n2] = 0.0; // x = 0
    values[0] = 0.0; // x = ±L
    Field::from_values(grid, values)
}
