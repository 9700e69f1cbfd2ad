//! `ibp-check`: Monte Carlo residuals of the Gaussian integration-by-parts
//! identity for the three reference cases.

use std::f64::consts::PI;
use std::path::Path;

use okl_ito::{ibp_residual, IbpCase};
use okl_lattice::{BoundaryParams, GridSpec};
use okl_noise::NoiseStream;
use serde::Serialize;

use super::Outcome;
use crate::config::Config;

#[derive(Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub u: f64,
    pub v: f64,
    pub n_samples: usize,
    pub residual: f64,
    pub se: f64,
    pub pass: bool,
}

/// The three reference cases at `n` paths each, seeded from `seed`.
pub fn reference_cases(n: usize, seed: u64) -> anyhow::Result<Vec<CaseReport>> {
    let grid = GridSpec::new(1.0, 256)?;
    let l = grid.l;
    let cosine = move |x: f64| 2.0 + (PI * x / l).cos();
    let d_cosine = move |x: f64| -(PI / l) * (PI * x / l).sin();
    let d2_cosine = move |x: f64| -(PI / l) * (PI / l) * (PI * x / l).cos();
    let cases: Vec<(String, IbpCase)> = vec![
        (
            "constant".into(),
            IbpCase::new(
                grid,
                BoundaryParams::new(0.5, 1.0 / 3.0),
                n,
                |_| 1.0,
                |_| 0.0,
                |_| 0.0,
            )?,
        ),
        (
            "cosine".into(),
            IbpCase::new(
                grid,
                BoundaryParams::new(1.0, 0.0),
                n,
                cosine,
                d_cosine,
                d2_cosine,
            )?,
        ),
        (
            "cosine_zero_slopes".into(),
            IbpCase::new(
                grid,
                BoundaryParams::new(0.0, 0.0),
                n,
                cosine,
                d_cosine,
                d2_cosine,
            )?,
        ),
    ];
    let mut out = Vec::new();
    for (i, (name, case)) in cases.into_iter().enumerate() {
        let mut stream = NoiseStream::new(seed, i as u64, grid, 1e-3);
        let (residual, se) = ibp_residual(&case, &mut stream)?;
        out.push(CaseReport {
            case: name,
            u: case.params.u,
            v: case.params.v,
            n_samples: n,
            residual,
            se,
            pass: residual.abs() <= 3.0 * se,
        });
    }
    Ok(out)
}

pub fn run(cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let n = cfg.usize("ibp.samples", 100_000)?;
    let seed = cfg.u64("ibp.seed", 31)?;
    let reports = reference_cases(n, seed)?;
    let path = out_dir.join("ibp_check.json");
    std::fs::write(&path, serde_json::to_string_pretty(&reports)?)?;
    Ok(Outcome {
        pass: reports.iter().all(|r| r.pass),
        outputs: vec![path],
    })
}
