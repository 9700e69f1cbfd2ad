//! The pinned reference bump functions and their derived kernels.
//!
//! `psi` is the smooth, even, nonnegative bump supported in
//! `(-3/4, -1/4) ∪ (1/4, 3/4)` with unit integral,
//!
//! ```text
//! psi(x) = c_psi * exp(-1 / (1 - (4|x| - 2)^2)),   1/4 < |x| < 3/4,
//! ```
//!
//! and `rho` is the smooth, even, nonnegative bump on `(-1/2, 1/2)` with unit
//! integral,
//!
//! ```text
//! rho(x) = c_rho * exp(-1 / (1 - (2x)^2)),          |x| < 1/2.
//! ```
//!
//! All constants that depend on the mollifier (most prominently the flux CLT
//! variance) are reported relative to these two pinned choices. The
//! normalization constants are fixed once by adaptive quadrature; the
//! full-line cosine transforms `psi_hat` / `rho_hat_line` are tabulated
//! lazily on a fine grid and interpolated, which keeps the two-dimensional
//! quadratures downstream cheap.

use crate::quad::{adaptive_simpson, gauss_legendre};
use std::f64::consts::PI;
use std::sync::OnceLock;

fn psi_raw(x: f64) -> f64 {
    let a = x.abs();
    if a <= 0.25 || a >= 0.75 {
        return 0.0;
    }
    let t = 4.0 * a - 2.0;
    (-1.0 / (1.0 - t * t)).exp()
}

fn rho_raw(x: f64) -> f64 {
    let t = 2.0 * x;
    if t.abs() >= 1.0 {
        return 0.0;
    }
    (-1.0 / (1.0 - t * t)).exp()
}

fn c_psi() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let mass = 2.0 * adaptive_simpson(psi_raw, 0.25, 0.75, 1e-13);
        1.0 / mass
    })
}

fn c_rho() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let mass = adaptive_simpson(rho_raw, -0.5, 0.5, 1e-13);
        1.0 / mass
    })
}

/// The reference bump `psi`: smooth, even, nonnegative, supported in
/// `(-3/4, -1/4) ∪ (1/4, 3/4)`, unit integral.
pub fn bump_psi(x: f64) -> f64 {
    c_psi() * psi_raw(x)
}

/// The reference bump `rho`: smooth, even, nonnegative, supported in
/// `(-1/2, 1/2)`, unit integral.
pub fn bump_rho(x: f64) -> f64 {
    c_rho() * rho_raw(x)
}

/// The rescaled bump `psi^eps(x) = psi(x/eps) / eps`.
pub fn bump_psi_scaled(eps: f64, x: f64) -> f64 {
    bump_psi(x / eps) / eps
}

/// The rescaled bump `rho^zeta(x) = rho(x/zeta) / zeta`.
pub fn bump_rho_scaled(zeta: f64, x: f64) -> f64 {
    bump_rho(x / zeta) / zeta
}

/// The self-convolution `R = rho * rho`, supported in `(-1, 1)`, even,
/// nonnegative, unit integral.
pub fn conv_rho_rho(x: f64) -> f64 {
    let a = x.abs();
    if a >= 1.0 {
        return 0.0;
    }
    // Overlap of supp rho(y) = (-1/2, 1/2) and supp rho(x - y) = (x-1/2, x+1/2).
    let lo = (-0.5f64).max(a - 0.5);
    let hi = 0.5f64.min(a + 0.5);
    adaptive_simpson(|y| bump_rho(y) * bump_rho(a - y), lo, hi, 1e-12)
}

/// The rescaled kernel `R^zeta(x) = R(x/zeta) / zeta`, supported in
/// `(-zeta, zeta)`.
pub fn r_scaled(zeta: f64, x: f64) -> f64 {
    conv_rho_rho(x / zeta) / zeta
}

/// Cumulative distribution of `psi`: exact 0 below `-3/4` and exact 1 above
/// `3/4`, quadrature in between.
pub fn psi_cdf(a: f64) -> f64 {
    if a <= -0.75 {
        0.0
    } else if a >= 0.75 {
        1.0
    } else {
        adaptive_simpson(bump_psi, -0.75, a, 1e-12)
    }
}

/// Uniform-grid table with cubic (4-point Lagrange) interpolation, for even
/// smooth functions tabulated on `[0, a_max]`.
struct CosTransformTable {
    step: f64,
    values: Vec<f64>,
}

impl CosTransformTable {
    fn build<F: Fn(f64) -> f64>(a_max: f64, step: f64, f: F) -> Self {
        let n = (a_max / step).ceil() as usize + 4;
        let values = (0..n).map(|i| f(i as f64 * step)).collect();
        Self { step, values }
    }

    fn eval(&self, a: f64) -> f64 {
        let a = a.abs();
        let t = a / self.step;
        let n = self.values.len();
        if t >= (n - 3) as f64 {
            return 0.0;
        }
        let i = (t.floor() as usize).saturating_sub(1).min(n - 4);
        let s = t - i as f64; // position within [i, i+3], ideally in [1, 2]
        let (f0, f1, f2, f3) = (
            self.values[i],
            self.values[i + 1],
            self.values[i + 2],
            self.values[i + 3],
        );
        // Cubic Lagrange on the four equally spaced points 0,1,2,3.
        let c0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        let c1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        let c2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        let c3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        c0 * f0 + c1 * f1 + c2 * f2 + c3 * f3
    }
}

fn psi_hat_direct(a: f64) -> f64 {
    // psi even => the transform is the cosine transform, real and even.
    let panels = 8 + (a.abs() * 0.75) as usize;
    2.0 * gauss_legendre(|s| bump_psi(s) * (PI * a * s).cos(), 0.25, 0.75, panels)
}

fn rho_hat_direct(theta: f64) -> f64 {
    let panels = 8 + (theta.abs() * 0.25) as usize;
    2.0 * gauss_legendre(|s| bump_rho(s) * (theta * s).cos(), 0.0, 0.5, panels)
}

/// Full-line transform of the reference bump,
/// `psi_hat(a) = ∫ psi(s) e^{-i pi a s} ds` (real and even since `psi` is).
///
/// Tabulated on first use; beyond the table range the transform is far below
/// the workspace tolerances and is clamped to zero.
pub fn psi_hat(a: f64) -> f64 {
    static TABLE: OnceLock<CosTransformTable> = OnceLock::new();
    TABLE
        .get_or_init(|| CosTransformTable::build(220.0, 1.0 / 256.0, psi_hat_direct))
        .eval(a)
}

/// Full-line transform of the noise bump,
/// `rho_hat_line(theta) = ∫ rho(s) e^{-i theta s} ds` (real and even).
pub fn rho_hat_line(theta: f64) -> f64 {
    static TABLE: OnceLock<CosTransformTable> = OnceLock::new();
    TABLE
        .get_or_init(|| CosTransformTable::build(700.0, 1.0 / 128.0, rho_hat_direct))
        .eval(theta)
}
