//! Real-valued lattice functions on the doubled torus.

use crate::{GridSpec, LatticeError};
use serde::{Deserialize, Serialize};

/// A real-valued function sampled at the `n` sites of a [`GridSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl Field {
    /// The zero field.
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.n],
        }
    }

    /// Samples `f` at every lattice site.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.n).map(|j| f(grid.x(j))).collect();
        Self { grid, values }
    }

    /// Wraps an existing value vector, checking its length.
    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self, LatticeError> {
        if values.len() != grid.n {
            return Err(LatticeError::LengthMismatch {
                expected: grid.n,
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Value at (wrapped) site index `j`.
    pub fn at(&self, j: isize) -> f64 {
        self.values[self.grid.wrap(j)]
    }

    /// Applies `f` site-wise, returning a new field.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Site-wise binary combination of two fields on the same grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Trapezoid quadrature of the field over the half-strip `[0, L]`.
    ///
    /// The endpoints `x = 0` and `x = L` enter with weight `1/2`; `x = L` is
    /// read from site `0` via the periodic identification.
    pub fn integral_half(&self) -> f64 {
        let n2 = self.grid.n / 2;
        let o = self.grid.origin();
        let mut acc = 0.5 * (self.values[o] + self.values[0]);
        for i in 1..n2 {
            acc += self.values[self.grid.half_to_full(i)];
        }
        acc * self.grid.dx()
    }

    /// Trapezoid `L^2[0, L]` inner product with another field.
    pub fn inner_half(&self, other: &Self) -> f64 {
        self.zip_with(other, |a, b| a * b).integral_half()
    }

    /// Extracts the `n/2 + 1` samples on the closed half-strip `[0, L]`.
    pub fn half_values(&self) -> Vec<f64> {
        (0..self.grid.half_len())
            .map(|i| self.values[self.grid.half_to_full(i)])
            .collect()
    }

    /// Mean over all torus sites.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.grid.n as f64
    }

    /// True if every value is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Site-wise linear update `self + c * other`.
    pub fn axpy(&self, c: f64, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + c * b)
    }
}
