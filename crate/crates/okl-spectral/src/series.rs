//! Plumbing types: truncated Fourier series and truncation budgets.

use crate::SpectralError;
use okl_lattice::{dft, Complex, Field};

/// A truncated Fourier series on the doubled torus `[-L, L)` in the
/// normalization `f(x) = sum_{|k| <= K} coeff(k) e^{i pi k x / L}`.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    /// Half-length of the physical interval (torus circumference `2L`).
    pub l: f64,
    /// Coefficients indexed `k = -K..=K`, stored in that order.
    coefficients: Vec<Complex>,
}

impl FourierSeries {
    /// Builds a series from coefficients indexed `k = -K..=K`; the vector
    /// length must be odd and at least 3 (`K >= 1`).
    pub fn new(l: f64, coefficients: Vec<Complex>) -> Result<Self, SpectralError> {
        if !(l > 0.0) {
            return Err(SpectralError::InvalidParameter(format!(
                "interval half-length must be positive, got {l}"
            )));
        }
        if coefficients.len() < 3 || coefficients.len() % 2 == 0 {
            return Err(SpectralError::InvalidTruncation(format!(
                "coefficient vector must have odd length >= 3, got {}",
                coefficients.len()
            )));
        }
        Ok(Self { l, coefficients })
    }

    /// Extracts the central `2K+1` modes of a lattice field's discrete
    /// transform.
    pub fn from_field(field: &Field, k_max: usize) -> Result<Self, SpectralError> {
        let n = field.grid.n;
        if 2 * k_max + 1 > n {
            return Err(SpectralError::InvalidTruncation(format!(
                "k_max={k_max} exceeds the {n}-site grid's mode range"
            )));
        }
        let full = dft(field);
        let mid = n / 2;
        let coefficients = full[mid - k_max..=mid + k_max].to_vec();
        Self::new(field.grid.l, coefficients)
    }

    /// Mode cutoff `K`.
    pub fn k_max(&self) -> i64 {
        (self.coefficients.len() as i64 - 1) / 2
    }

    /// Coefficient at mode `k` (zero beyond the cutoff).
    pub fn coeff(&self, k: i64) -> Complex {
        let idx = k + self.k_max();
        if idx < 0 || idx >= self.coefficients.len() as i64 {
            Complex { re: 0.0, im: 0.0 }
        } else {
            self.coefficients[idx as usize]
        }
    }

    /// Whether the coefficients satisfy the conjugate symmetry
    /// `coeff(-k) = conj(coeff(k))` of a real function, within `tol`.
    pub fn is_real_symmetric(&self, tol: f64) -> bool {
        (0..=self.k_max()).all(|k| {
            let a = self.coeff(k);
            let b = self.coeff(-k);
            (a.re - b.re).abs() <= tol && (a.im + b.im).abs() <= tol
        })
    }
}

/// A mode cutoff paired with the tolerance it is expected to deliver.
#[derive(Debug, Clone, Copy)]
pub struct TruncationSpec {
    /// Symmetric mode cutoff `K` (sums run over `|k| <= K`).
    pub k_max: i64,
    /// Target tolerance for the truncated value.
    pub tol: f64,
}

impl TruncationSpec {
    /// Default cutoff for singly-indexed mode sums.
    pub const SINGLE_SUM_K: i64 = 4096;
    /// Default cutoff (per index) for doubly-indexed mode sums.
    pub const DOUBLE_SUM_K: i64 = 1024;

    /// Builds a truncation budget; requires `K >= 16` and positive `tol`.
    pub fn new(k_max: i64, tol: f64) -> Result<Self, SpectralError> {
        if k_max < 16 {
            return Err(SpectralError::InvalidTruncation(format!(
                "mode cutoff must be at least 16, got {k_max}"
            )));
        }
        if !(tol > 0.0) {
            return Err(SpectralError::InvalidTruncation(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        Ok(Self { k_max, tol })
    }
}
