//! The mollifier constant `V_psi` and the lattice mode sum behind it.
//!
//! `V_psi` normalizes both the red-cherry variance and the red-blue-red
//! boundary mean:
//!
//! ```text
//! V_psi = (1/pi^2) ∬ psi_hat(x) (psi_hat(x) - psi_hat(x - 2y))
//!                   / (y^2 + (x-y)^2) dx dy.
//! ```
//!
//! The integrand is bounded near the origin (the numerator vanishes to the
//! same order as the denominator because `psi_hat` is even) and the two
//! individually divergent pieces cancel, so the integral must be evaluated
//! in combined form. Two independent routes are provided: direct 2-D
//! quadrature with an analytic far-field correction, and the lattice Riemann
//! sum that arises as the `eps -> 0` limit of the mode sums.

use okl_lattice::psi_hat;
use okl_lattice::quad::gauss_legendre;
use std::f64::consts::PI;

/// The full-line mode sum `S(j) = sum_{l in Z} 1 / (l^2 + (j-l)^2)` in
/// closed form,
///
/// ```text
/// S(j) = (pi/|j|) sinh(pi |j|) / (cosh(pi |j|) - (-1)^j),   j != 0,
/// ```
///
/// with the convention that the divergent `l = 0` term is dropped at
/// `j = 0`, where the sum evaluates to `pi^2 / 6`. Used to complete the
/// quadratically-decaying tails of the second-chaos double sums exactly.
pub fn inverse_quadratic_mode_sum(j: i64) -> f64 {
    if j == 0 {
        return PI * PI / 6.0;
    }
    let a = PI * j.abs() as f64;
    if a > 60.0 {
        // sinh/cosh ratio is 1 to machine precision; avoids overflow.
        return PI / j.abs() as f64;
    }
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    PI / j.abs() as f64 * a.sinh() / (a.cosh() - sign)
}

fn integrand(x: f64, y: f64) -> f64 {
    let p = psi_hat(x);
    if p == 0.0 {
        return 0.0;
    }
    let num = p * (p - psi_hat(x - 2.0 * y));
    let d1 = x - y;
    num / (y * y + d1 * d1)
}

/// `atan(u/d) / u`, stable as `u -> 0`.
fn atan_over(u: f64, d: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 / d
    } else {
        (u / d).atan() / u
    }
}

/// Exact integral of `1/(y^2 + (x-y)^2)` over `|y| > r`.
fn far_field_weight(x: f64, r: f64) -> f64 {
    debug_assert!(x.abs() < 2.0 * r);
    let u = x.abs();
    atan_over(u, 2.0 * r - x) + atan_over(u, 2.0 * r + x)
}

/// `V_psi` by 2-D quadrature.
///
/// The `y` integral is truncated at `|y| <= r_cut` and completed with the
/// analytic far-field weight applied to the `psi_hat(x)^2` part; the
/// neglected cross term involves `psi_hat` beyond argument `2 r_cut - 80`
/// and is far below the target accuracy for `r_cut >= 60`. Composite
/// 16-point Gauss-Legendre panels of width `panel_width` are used on both
/// axes.
pub fn v_psi(r_cut: f64, panel_width: f64) -> f64 {
    assert!(r_cut >= 50.0, "far-field completion assumes r_cut >= 50");
    let x_cut = 80.0; // psi_hat is negligible beyond this argument
    let x_panels = (2.0 * x_cut / panel_width).ceil() as usize;
    let y_panels = (2.0 * r_cut / panel_width).ceil() as usize;
    let inner = |y: f64| gauss_legendre(|x| integrand(x, y), -x_cut, x_cut, x_panels);
    let core = gauss_legendre(inner, -r_cut, r_cut, y_panels);
    let tail = gauss_legendre(
        |x| {
            let p = psi_hat(x);
            p * p * far_field_weight(x, r_cut)
        },
        -x_cut,
        x_cut,
        x_panels,
    );
    (core + tail) / (PI * PI)
}

/// `V_psi` by the lattice route: the Riemann sum on the grid `step * Z`
/// that the mode sums converge to, with the quadratic tail of the square
/// term completed via [`inverse_quadratic_mode_sum`].
///
/// Because the summand is smooth and rapidly decaying, the Riemann sum
/// converges to the integral faster than any power of `step`; the dominant
/// error is the `a_cut` truncation of the cross term.
pub fn v_psi_riemann(step: f64, a_cut: f64) -> f64 {
    assert!(step > 0.0 && a_cut > 10.0);
    let j_max = (a_cut / step).ceil() as i64;
    let mut square = 0.0;
    for j in -j_max..=j_max {
        let p = psi_hat(step * j as f64);
        if p != 0.0 {
            square += p * p * inverse_quadratic_mode_sum(j);
        }
    }
    let mut cross = 0.0;
    for j in -j_max..=j_max {
        let pj = psi_hat(step * j as f64);
        if pj == 0.0 {
            continue;
        }
        // l restricted so that the second factor's argument stays in range.
        let lo = ((j - j_max) as f64 / 2.0).floor() as i64;
        let hi = ((j + j_max) as f64 / 2.0).ceil() as i64;
        for ell in lo..=hi {
            if j == 0 && ell == 0 {
                continue; // matches the dropped l = 0 term of the square part
            }
            let q = psi_hat(step * (j - 2 * ell) as f64);
            if q == 0.0 {
                continue;
            }
            let denom = (ell * ell + (j - ell) * (j - ell)) as f64;
            cross += pj * q / denom;
        }
    }
    (square - cross) / (PI * PI)
}
