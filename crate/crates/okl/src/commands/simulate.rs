//! `simulate`: one trajectory, persisted as a long-format CSV.

use std::path::Path;

use okl_she::{cole_hopf, run_trajectory};

use super::{sim_config, Outcome};
use crate::config::Config;

pub fn run(cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let sim = sim_config(cfg)?;
    let traj = run_trajectory(&sim)?;
    let path = out_dir.join("trajectory.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["time", "x", "z", "h"])?;
    let dx = sim.grid.dx();
    for (&t, z) in traj.times.iter().zip(&traj.z_fields) {
        let h = cole_hopf(z)?;
        for (j, (&zv, &hv)) in z
            .half_values()
            .iter()
            .zip(h.half_values().iter())
            .enumerate()
        {
            w.write_record([
                t.to_string(),
                (j as f64 * dx).to_string(),
                zv.to_string(),
                hv.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(Outcome {
        pass: true,
        outputs: vec![path],
    })
}
