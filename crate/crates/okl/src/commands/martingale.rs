//! `martingale-check`: constancy of the tilted-density mean along the
//! reversed dynamics, plus a wrong-rate negative control.

use std::path::Path;

use okl_ito::{alpha_of, martingale_drift, martingale_drift_with_alpha, DriftReport};
use serde::Serialize;

use super::{sim_config, Outcome};
use crate::config::Config;

#[derive(Debug, Serialize)]
pub struct MartingaleReport {
    pub main: DriftReport,
    pub control: Option<DriftReport>,
    /// Main verdict passes and the control (if run) is detected.
    pub pass: bool,
}

pub fn run(cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let sim = sim_config(cfg)?;
    let ensemble = cfg.usize("martingale.ensemble", 2000)?;
    let inner = cfg.usize("martingale.inner", 128)?;
    let checkpoints: Vec<f64> = cfg
        .str("martingale.checkpoints", "0,0.05,0.15,0.25")
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("config field `martingale.checkpoints`: bad `{s}`"))
        })
        .collect::<Result<_, _>>()?;
    let with_control = cfg.bool("martingale.control", true)?;

    let main = martingale_drift(&sim, ensemble, &checkpoints, inner)?;
    let control = if with_control {
        Some(martingale_drift_with_alpha(
            &sim,
            ensemble,
            &checkpoints,
            inner,
            alpha_of(sim.params) + 0.5,
        )?)
    } else {
        None
    };
    let pass = main.pass && control.as_ref().map_or(true, |c| !c.pass);
    let report = MartingaleReport {
        main,
        control,
        pass,
    };
    let path = out_dir.join("martingale_check.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
    Ok(Outcome {
        pass: report.pass,
        outputs: vec![path],
    })
}
