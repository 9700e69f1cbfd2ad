//! Subcommand implementations. Each returns an [`Outcome`] carrying the
//! overall verdict and the artifact paths for the manifest.

pub mod diagram;
pub mod flux_clt;
pub mod ibp;
pub mod invariance;
pub mod martingale;
pub mod simulate;
pub mod spectral;

use std::path::{Path, PathBuf};

use anyhow::Context;
use okl_lattice::{BoundaryParams, GridSpec, MollifierPair};
use okl_measure::StatReport;
use okl_she::{Scheme, SimConfig};

use crate::config::Config;

/// Verdict and emitted artifacts of one subcommand run.
pub struct Outcome {
    pub pass: bool,
    pub outputs: Vec<PathBuf>,
}

/// Builds the shared simulation configuration from the `[sim]` section.
pub fn sim_config(cfg: &Config) -> anyhow::Result<SimConfig> {
    let l = cfg.f64("sim.l", 1.0)?;
    let n = cfg.usize("sim.n", 128)?;
    let grid = GridSpec::new(l, n).context("config field `sim.n`/`sim.l`")?;
    let params = BoundaryParams::new(cfg.f64("sim.u", 0.0)?, cfg.f64("sim.v", 0.0)?);
    let moll = MollifierPair::new_unchecked(cfg.f64("sim.eps", 0.25)?, cfg.f64("sim.zeta", 0.0625)?);
    let t_final = cfg.f64("sim.t_final", 0.3)?;
    let scheme = match cfg.str("sim.scheme", "semi-implicit").as_str() {
        "semi-implicit" => Scheme::SemiImplicit,
        "explicit" => Scheme::Explicit,
        other => anyhow::bail!("config field `sim.scheme`: unknown scheme `{other}`"),
    };
    let mut sim = SimConfig::new(
        grid,
        params,
        moll,
        cfg.f64("sim.dt", 5e-4)?,
        t_final,
        scheme,
        cfg.u64("sim.seed", 1)?,
        cfg.u64("sim.stream_id", 0)?,
    );
    sim.snapshot_cadence = cfg.f64("sim.cadence", sim.snapshot_cadence)?;
    sim.noise_enabled = cfg.bool("sim.noise", true)?;
    sim.potential_enabled = cfg.bool("sim.potential", true)?;
    sim.validate().context("simulation configuration")?;
    Ok(sim)
}

/// Writes comparison rows in the fixed column order
/// `id,simulated,simulated_se,reference,reference_se,ks,pass`.
pub fn write_stat_reports(path: &Path, rows: &[StatReport]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "id",
        "simulated",
        "simulated_se",
        "reference",
        "reference_se",
        "ks",
        "pass",
    ])?;
    for r in rows {
        w.write_record([
            r.id.clone(),
            r.simulated.to_string(),
            r.simulated_se.to_string(),
            r.importance.to_string(),
            r.importance_se.to_string(),
            r.ks.map(|k| k.to_string()).unwrap_or_default(),
            r.pass.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
