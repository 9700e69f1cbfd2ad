//! Seeded generation of the reflected/periodized space-time white noise, its
//! spatial mollification, and the Brownian-type initial data.
//!
//! The driving noise lives on the doubled torus `[-L, L)` and is built from
//! white noise on `[0, L]` by *even* reflection, so per unit time its spatial
//! covariance is `Sha^zeta_{2L}(x - x') + Sha^zeta_{2L}(x + x')` after
//! mollification with `rho^zeta`. The initial slope data use the *odd*
//! extension instead, giving covariance `Sha(x - x') - Sha(x + x')`, and the
//! initial height is its antiderivative started at the origin — an even,
//! `2L`-periodic field.
//!
//! Reproducibility contract: generation is counter-based. Every draw is
//! produced by a fresh cipher RNG keyed by `(seed, stream_id, counter,
//! domain tag)`, so regenerating a stream with the same coordinates is
//! bit-identical, streams with different ids are independent, and replicates
//! can run in parallel without coordination.

use okl_lattice::{even_extend, odd_extend, sha_hat, Field, GridSpec, LatticeError};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;

/// Errors produced by noise generation.
#[derive(Debug, thiserror::Error)]
pub enum NoiseError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// The mollification scale is too small for the grid to resolve.
    #[error("invalid scale: {0}")]
    InvalidScale(String),
}

/// One time-step of driving noise: per-site increments and the step size.
#[derive(Debug, Clone)]
pub struct NoiseIncrement {
    pub field: Field,
    pub dt: f64,
}

/// A counter-based, replayable noise source tied to a grid and a step size.
///
/// Distinct `(seed, stream_id)` pairs give statistically independent
/// sequences; identical coordinates replay bit-identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseStream {
    pub seed: u64,
    pub stream_id: u64,
    pub grid: GridSpec,
    pub dt: f64,
    counter: u64,
}

/// Domain tags separating the independent uses of a stream.
#[derive(Clone, Copy)]
enum Domain {
    Increment = 1,
    InitialData = 2,
    Auxiliary = 3,
    EwModes = 4,
}

impl NoiseStream {
    pub fn new(seed: u64, stream_id: u64, grid: GridSpec, dt: f64) -> Self {
        Self {
            seed,
            stream_id,
            grid,
            dt,
            counter: 0,
        }
    }

    /// Number of draws consumed so far (checkpointable state).
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Restores a stream at a given counter position.
    pub fn with_counter(mut self, counter: u64) -> Self {
        self.counter = counter;
        self
    }

    fn rng(&mut self, domain: Domain) -> ChaCha12Rng {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(self.stream_id.to_le_bytes());
        h.update(self.counter.to_le_bytes());
        h.update([domain as u8]);
        self.counter += 1;
        let key: [u8; 32] = h.finalize().into();
        ChaCha12Rng::from_seed(key)
    }

    fn normals(&mut self, domain: Domain, count: usize) -> Vec<f64> {
        let mut rng = self.rng(domain);
        (0..count)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect()
    }

    /// Raw lattice white noise for one time step: iid `N(0, dt/dx)` at the
    /// half-strip sites, extended evenly to the torus so the reflection
    /// symmetry holds exactly per sample path.
    pub fn raw_increment(&mut self) -> NoiseIncrement {
        let g = self.grid;
        let sd = (self.dt / g.dx()).sqrt();
        let half: Vec<f64> = self
            .normals(Domain::Increment, g.half_len())
            .into_iter()
            .map(|z| sd * z)
            .collect();
        let field = even_extend(g, &half).expect("length matches by construction");
        NoiseIncrement { field, dt: self.dt }
    }

    /// Mollified noise increment: circular convolution of a raw increment
    /// with `rho^zeta`. Per unit time its covariance matches
    /// `Sha^zeta_{2L}(x - x') + Sha^zeta_{2L}(x + x')`.
    pub fn mollified_increment(&mut self, zeta: f64) -> Result<NoiseIncrement, NoiseError> {
        check_resolved(self.grid, zeta)?;
        let raw = self.raw_increment();
        Ok(NoiseIncrement {
            field: mollify(&raw.field, zeta),
            dt: raw.dt,
        })
    }

    /// Initial height `A^zeta(x) = ∫_0^x eta^zeta`, where `eta^zeta` is the
    /// mollified odd-extended spatial white noise. Even and `2L`-periodic by
    /// construction.
    pub fn initial_height(&mut self, zeta: f64) -> Result<Field, NoiseError> {
        let eta = self.initial_slope(zeta)?;
        Ok(antiderivative_from_origin(&eta))
    }

    /// The mollified odd-extended initial slope noise `eta^zeta` itself
    /// (covariance `Sha(x - x') - Sha(x + x')`).
    pub fn initial_slope(&mut self, zeta: f64) -> Result<Field, NoiseError> {
        check_resolved(self.grid, zeta)?;
        let g = self.grid;
        let sd = (1.0 / g.dx()).sqrt();
        let half: Vec<f64> = self
            .normals(Domain::InitialData, g.half_len())
            .into_iter()
            .map(|z| sd * z)
            .collect();
        let eta = odd_extend(g, &half)?;
        Ok(mollify(&eta, zeta))
    }

    /// A vector of iid standard normals from the stream's auxiliary domain
    /// (Brownian bridges, inner Monte Carlo, etc.).
    pub fn aux_normals(&mut self, count: usize) -> Vec<f64> {
        self.normals(Domain::Auxiliary, count)
    }

    /// A standard Brownian path on the half-strip lattice, `B(0) = 0`,
    /// sampled by cumulative Gaussian increments of variance `dx`.
    pub fn brownian_half_path(&mut self) -> Vec<f64> {
        let g = self.grid;
        let sd = g.dx().sqrt();
        let z = self.normals(Domain::Auxiliary, g.half_len() - 1);
        let mut path = Vec::with_capacity(g.half_len());
        path.push(0.0);
        for zi in z {
            path.push(path.last().unwrap() + sd * zi);
        }
        path
    }

    /// Independent stationary sine-mode amplitudes `b_k ~ N(0, sha_hat(k))`,
    /// `k = 1..=k_max`, of the stationary linearized (Edwards–Wilkinson)
    /// gradient line.
    pub fn ew_modes(&mut self, zeta: f64, k_max: usize) -> Vec<f64> {
        let g = self.grid;
        self.normals(Domain::EwModes, k_max)
            .into_iter()
            .enumerate()
            .map(|(i, z)| (sha_hat(g.l, zeta, (i + 1) as i64)).sqrt() * z)
            .collect()
    }

    /// One stationary sample of the linearized gradient line,
    /// `l(x) = -2 sum_k b_k sin(pi k x / L)`.
    pub fn ew_gradient_sample(&mut self, zeta: f64, k_max: usize) -> Field {
        let modes = self.ew_modes(zeta, k_max);
        ew_field_from_modes(self.grid, &modes)
    }

    /// A pair of stationary gradient lines a time `gap` apart. Each mode is
    /// a stationary Ornstein–Uhlenbeck coordinate with relaxation rate
    /// `pi^2 k^2 / (2 L^2)`, matching the per-mode covariance decay
    /// `exp(-pi^2 k^2 gap / (2 L^2))`.
    pub fn ew_gradient_pair(&mut self, zeta: f64, k_max: usize, gap: f64) -> (Field, Field) {
        let g = self.grid;
        let b0 = self.ew_modes(zeta, k_max);
        let fresh = self.normals(Domain::EwModes, k_max);
        let b1: Vec<f64> = b0
            .iter()
            .zip(fresh)
            .enumerate()
            .map(|(i, (&b, z))| {
                let k = (i + 1) as f64;
                let decay = (-PI * PI * k * k * gap / (2.0 * g.l * g.l)).exp();
                let var = sha_hat(g.l, zeta, (i + 1) as i64);
                decay * b + (var * (1.0 - decay * decay)).sqrt() * z
            })
            .collect();
        (
            ew_field_from_modes(g, &b0),
            ew_field_from_modes(g, &b1),
        )
    }
}

fn ew_field_from_modes(grid: GridSpec, modes: &[f64]) -> Field {
    Field::from_fn(grid, |x| {
        modes
            .iter()
            .enumerate()
            .map(|(i, &b)| -2.0 * b * (PI * (i + 1) as f64 * x / grid.l).sin())
            .sum()
    })
}

fn check_resolved(grid: GridSpec, zeta: f64) -> Result<(), NoiseError> {
    if zeta < 2.0 * grid.dx() {
        return Err(NoiseError::InvalidScale(format!(
            "mollifier under-resolved: zeta={zeta} < 2 dx = {}",
            2.0 * grid.dx()
        )));
    }
    Ok(())
}

/// Circular convolution with the compactly supported kernel `rho^zeta`,
/// evaluated directly in physical space so the support is exact.
pub fn mollify(f: &Field, zeta: f64) -> Field {
    let g = f.grid;
    let dx = g.dx();
    let reach = (zeta / dx).ceil() as isize;
    let kernel: Vec<f64> = (-reach..=reach)
        .map(|m| okl_lattice::bump_rho_scaled(zeta, m as f64 * dx) * dx)
        .collect();
    let values = (0..g.n as isize)
        .map(|j| {
            kernel
                .iter()
                .enumerate()
                .map(|(idx, &k)| k * f.at(j - (idx as isize - reach)))
                .sum()
        })
        .collect();
    Field { grid: g, values }
}

/// Trapezoid antiderivative `A(x) = ∫_0^x f` on the torus, `A(0) = 0`.
///
/// Built symmetrically from the origin in both directions, so an odd
/// integrand yields an exactly even antiderivative; the two branches meet at
/// `x = ±L` (site 0), whose value is taken from the forward branch.
pub fn antiderivative_from_origin(f: &Field) -> Field {
    let g = f.grid;
    let o = g.origin() as isize;
    let dx = g.dx();
    let mut values = vec![0.0; g.n];
    let mut acc = 0.0;
    for i in 1..=(g.n as isize / 2) {
        acc += 0.5 * dx * (f.at(o + i - 1) + f.at(o + i));
        values[g.wrap(o + i)] = acc;
    }
    let wrap_value = acc;
    acc = 0.0;
    for i in 1..(g.n as isize / 2) {
        acc -= 0.5 * dx * (f.at(o - i + 1) + f.at(o - i));
        values[g.wrap(o - i)] = acc;
    }
    values[0] = wrap_value;
    Field { grid: g, values }
}
