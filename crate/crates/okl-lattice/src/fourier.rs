//! Discrete Fourier transform in the torus normalization
//! `f_hat(k) = (1/2L) ∫ f(x) e^{-i pi k x / L} dx`.

use crate::{Field, GridSpec};
use std::f64::consts::PI;

/// Minimal complex number for transform coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Lattice Fourier coefficients `f_hat(k)` for `k = -n/2 .. n/2 - 1`,
/// approximating `(1/2L) ∫_{-L}^{L} f(x) e^{-i pi k x / L} dx` by the
/// lattice Riemann sum. Index `i` of the returned vector holds mode
/// `k = i - n/2`.
pub fn dft(f: &Field) -> Vec<Complex> {
    let g = f.grid;
    let n = g.n;
    let scale = g.dx() / (2.0 * g.l);
    (0..n)
        .map(|i| {
            let k = i as isize - (n / 2) as isize;
            let mut re = 0.0;
            let mut im = 0.0;
            for j in 0..n {
                let phase = -PI * k as f64 * g.x(j) / g.l;
                let (s, c) = phase.sin_cos();
                re += f.values[j] * c;
                im += f.values[j] * s;
            }
            Complex {
                re: re * scale,
                im: im * scale,
            }
        })
        .collect()
}

/// Inverse of [`dft`]: reconstructs the field as
/// `f(x_j) = sum_k f_hat(k) e^{i pi k x_j / L}`.
pub fn idft(grid: GridSpec, coeffs: &[Complex]) -> Field {
    let n = grid.n;
    assert_eq!(coeffs.len(), n, "coefficient count must match grid");
    let values = (0..n)
        .map(|j| {
            let mut acc = 0.0;
            for (i, c) in coeffs.iter().enumerate() {
                let k = i as isize - (n / 2) as isize;
                let phase = PI * k as f64 * grid.x(j) / grid.l;
                acc += c.re * phase.cos() - c.im * phase.sin();
            }
            acc
        })
        .collect();
    Field { grid, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dft_of_single_cosine_mode() {
        let g = GridSpec::new(1.0, 64).unwrap();
        let f = Field::from_fn(g, |x| (3.0 * PI * x).cos());
        let c = dft(&f);
        // Modes k = ±3 carry weight 1/2 each.
        for (i, v) in c.iter().enumerate() {
            let k = i as isize - 32;
            let expect = if k.abs() == 3 { 0.5 } else { 0.0 };
            assert_abs_diff_eq!(v.re, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn dft_idft_round_trip() {
        let g = GridSpec::new(1.3, 32).unwrap();
        let f = Field::from_fn(g, |x| (x * 2.1).sin() + 0.3 * x.cos());
        let back = idft(g, &dft(&f));
        for j in 0..g.n {
            assert_abs_diff_eq!(back.values[j], f.values[j], epsilon = 1e-10);
        }
    }
}
