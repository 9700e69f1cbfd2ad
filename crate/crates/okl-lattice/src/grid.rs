//! Uniform lattices on the doubled torus `[-L, L)`.

use crate::LatticeError;
use serde::{Deserialize, Serialize};

/// A uniform lattice of `n` cells on `[-L, L)` with spacing `dx = 2L/n`.
///
/// `n` is required to be even so that both `x = 0` (site `n/2`) and `x = L`
/// (site `0`, via the periodic identification `L ≡ -L`) are exact lattice
/// points: boundary evaluations are never interpolated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Half-strip length; the physical domain of interest is `[0, L]`.
    pub l: f64,
    /// Number of lattice cells on `[-L, L)`.
    pub n: usize,
}

impl GridSpec {
    /// Builds a grid, checking `L > 0` and `n` even and positive.
    pub fn new(l: f64, n: usize) -> Result<Self, LatticeError> {
        if !(l > 0.0) {
            return Err(LatticeError::InvalidGrid(format!("need L > 0, got {l}")));
        }
        if n == 0 || n % 2 != 0 {
            return Err(LatticeError::InvalidGrid(format!(
                "need even positive n, got {n}"
            )));
        }
        Ok(Self { l, n })
    }

    /// Lattice spacing `2L / n`.
    pub fn dx(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    /// Coordinate of site `j`, `x_j = -L + j dx`, for `j` in `0..n`.
    pub fn x(&self, j: usize) -> f64 {
        -self.l + j as f64 * self.dx()
    }

    /// Site index of `x = 0`.
    pub fn origin(&self) -> usize {
        self.n / 2
    }

    /// Number of sites on the closed half-strip `[0, L]`, i.e. `n/2 + 1`.
    pub fn half_len(&self) -> usize {
        self.n / 2 + 1
    }

    /// Wraps an integer site index onto `0..n`.
    pub fn wrap(&self, j: isize) -> usize {
        j.rem_euclid(self.n as isize) as usize
    }

    /// Site index of the reflection `x ↦ -x` of site `j`.
    pub fn mirror(&self, j: usize) -> usize {
        self.wrap(self.n as isize - j as isize)
    }

    /// Index on the full torus of half-strip site `i` (where half-strip site
    /// `i` sits at `x = i dx`, `i` in `0..=n/2`).
    pub fn half_to_full(&self, i: usize) -> usize {
        self.wrap((self.n / 2 + i) as isize)
    }
}
