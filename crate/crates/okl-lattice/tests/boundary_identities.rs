//! Cross-module identities of the lattice layer: mass and symmetry of the
//! boundary potential, the comb against its defining periodization, and
//! the transform round trip.

use okl_lattice::{
    boundary_potential, bump_rho_scaled, dft, idft, sha_comb, BoundaryParams, Field, GridSpec,
    MollifierPair,
};

#[test]
fn boundary_potential_mass_is_minus_half_the_slope_sum() {
    let g = GridSpec::new(1.0, 4096).unwrap();
    let p = BoundaryParams::new(1.25, 0.5);
    let phi = boundary_potential(p, MollifierPair::new_unchecked(0.125, 0.01), g).unwrap();
    let ones = Field::from_fn(g, |_| 1.0);
    let mass = phi.inner_half(&ones);
    // Each endpoint bump is split evenly between the half strip and its
    // mirror, so the half-strip mass is -(u+v)/2; the lattice trapezoid on
    // this grid resolves the bump to ~1e-5.
    assert!(
        (mass + (p.u + p.v) / 2.0).abs() < 1e-4,
        "half-strip mass {mass}"
    );
}

#[test]
fn boundary_potential_is_even_about_both_endpoints() {
    let g = GridSpec::new(1.0, 512).unwrap();
    let p = BoundaryParams::new(0.7, 1.3);
    let phi = boundary_potential(p, MollifierPair::new_unchecked(0.25, 0.01), g).unwrap();
    for j in 0..g.n {
        // Reflection about x = 0.
        assert!((phi.values[j] - phi.values[g.mirror(j)]).abs() < 1e-13);
    }
    // Reflection about x = L is the composition with a half-torus shift.
    for j in 0..g.n {
        let k = (2 * g.origin() + g.n - j) % g.n; // 2L - x(j) image
        assert!((phi.values[j] - phi.values[k]).abs() < 1e-13);
    }
}

#[test]
fn comb_matches_its_defining_periodization() {
    // Sha^zeta_M(x) = sum_q rho_zeta(x - qM); the scale is far inside the
    // period, so three images dominate to machine precision.
    let (m, zeta) = (2.0, 0.125);
    for &x in &[0.0, 0.03, -0.06, 0.9, 1.99, 2.5] {
        let direct: f64 = (-3..=3)
            .map(|q| bump_rho_scaled(zeta, x - q as f64 * m))
            .sum();
        let comb = sha_comb(m, zeta, x).unwrap();
        assert!(
            (comb - direct).abs() <= 1e-10 * (1.0 + direct.abs()),
            "x = {x}: comb {comb} vs periodization {direct}"
        );
    }
}

#[test]
fn transform_round_trip_is_exact_and_even_fields_have_real_modes() {
    let g = GridSpec::new(1.0, 128).unwrap();
    let f = Field::from_fn(g, |x| (x * 2.1).sin() + 0.3 * (x * x).cos());
    let modes = dft(&f);
    let back = idft(g, &modes).unwrap();
    for (a, b) in f.values.iter().zip(&back.values) {
        assert!((a - b).abs() < 1e-12);
    }

    let even = Field::from_fn(g, |x| (std::f64::consts::PI * x / g.l).cos());
    for m in dft(&even) {
        assert!(m.im.abs() < 1e-10, "even field has imaginary mode {}", m.im);
    }
}
