//! `invariance`: matched comparison of simulated long-run statistics with
//! the importance-sampled invariant-measure prediction.

use std::path::Path;

use okl_measure::{invariance_report, McConfig, ObsSpec};

use super::{sim_config, write_stat_reports, Outcome};
use crate::config::Config;

/// Parses a panel spec like `m1:c0.5:w0.5;m2:c0.3:w0.4`.
fn parse_panel(text: &str) -> anyhow::Result<Vec<ObsSpec>> {
    let mut panel = Vec::new();
    for item in text.split(';').filter(|s| !s.trim().is_empty()) {
        let mut spec = ObsSpec {
            center: 0.5,
            width: 0.5,
            moment: 1,
        };
        for part in item.trim().split(':') {
            let (tag, rest) = part.split_at(1);
            let value = rest
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("config field `invariance.panel`: bad entry `{part}`"))?;
            match tag {
                "m" => spec.moment = value as u8,
                "c" => spec.center = value,
                "w" => spec.width = value,
                _ => anyhow::bail!("config field `invariance.panel`: unknown tag `{tag}`"),
            }
        }
        panel.push(spec);
    }
    anyhow::ensure!(!panel.is_empty(), "config field `invariance.panel`: empty");
    Ok(panel)
}

pub fn run(cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let sim = sim_config(cfg)?;
    let panel = parse_panel(&cfg.str(
        "invariance.panel",
        "m1:c0.5:w0.5;m2:c0.5:w0.5;m2:c0.3:w0.4",
    ))?;
    let mc = McConfig {
        outer_n: cfg.usize("invariance.outer", 2048)?,
        inner_n: cfg.usize("invariance.inner", 64)?,
        allow_extreme: cfg.bool("invariance.allow_extreme", false)?,
    };
    let ensemble = cfg.usize("invariance.ensemble", 300)?;
    let rows = invariance_report(&sim, &panel, ensemble, &mc)?;
    let path = out_dir.join("invariance.csv");
    write_stat_reports(&path, &rows)?;
    Ok(Outcome {
        pass: rows.iter().all(|r| r.pass),
        outputs: vec![path],
    })
}
