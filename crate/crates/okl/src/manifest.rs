//! Reproducibility manifest written alongside every run's artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// Everything needed to reproduce and audit one subcommand run. Every
/// artifact the run emits is listed in `outputs`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config_hash: String,
    pub seed: u64,
    pub threads: usize,
    pub module_versions: BTreeMap<String, String>,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
    pub pass: bool,
}

/// Workspace crates participating in a run; all share the package version.
pub fn module_versions() -> BTreeMap<String, String> {
    let v = env!("CARGO_PKG_VERSION").to_string();
    [
        "okl", "okl-lattice", "okl-noise", "okl-she", "okl-measure", "okl-flux", "okl-spectral",
        "okl-diagrams", "okl-ito",
    ]
    .iter()
    .map(|m| (m.to_string(), v.clone()))
    .collect()
}

impl RunManifest {
    pub fn write(&self, out_dir: &Path) -> anyhow::Result<PathBuf> {
        let path = out_dir.join("manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(self)?)?;
        Ok(path)
    }
}
