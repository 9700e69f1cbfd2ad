//! `flux-clt`: ensemble of renormalized boundary-flux samples compared
//! with the predicted Gaussian law.

use std::path::Path;

use okl_flux::{clt_report, flux_b_tilde, v_psi_checked, CltPrediction, FluxSample};
use okl_lattice::Field;
use okl_she::run_trajectory;
use rayon::prelude::*;

use super::{sim_config, write_stat_reports, Outcome};
use crate::config::Config;

pub fn run(cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let sim = sim_config(cfg)?;
    let ensemble = cfg.usize("flux.ensemble", 1000)?;
    let s = cfg.f64("flux.s", 0.0)?;
    let t = cfg.f64("flux.t", sim.t_final)?;

    // Test functions for the independence-from-the-noise panel.
    let probes: Vec<Field> = [(0.3, 0.2), (0.6, 0.2)]
        .iter()
        .map(|&(c, w)| Field::from_fn(sim.grid, move |x| okl_lattice::bump_rho_scaled(w, x - c)))
        .collect();

    let results: Vec<anyhow::Result<(FluxSample, Vec<f64>)>> = (0..ensemble)
        .into_par_iter()
        .map(|member| {
            let mut run_cfg = sim.clone();
            run_cfg.stream_id = sim.stream_id + member as u64;
            let traj = run_trajectory(&run_cfg)?;
            let sample = flux_b_tilde(&traj, s, t)?;
            let w0 = &traj.w_fields[0];
            let wt = traj.w_fields.last().expect("non-empty trajectory");
            let dw = wt.zip_with(w0, |a, b| a - b);
            let panel = probes.iter().map(|p| dw.inner_half(p)).collect();
            Ok((sample, panel))
        })
        .collect();
    let mut samples = Vec::with_capacity(ensemble);
    let mut panel = Vec::with_capacity(ensemble);
    for r in results {
        let (sample, row) = r?;
        samples.push(sample);
        panel.push(row);
    }

    let v_psi = v_psi_checked(1e-3)?;
    let prediction = CltPrediction::forward(sim.params.u, sim.params.v, t - s, v_psi);
    let rows = clt_report(&samples, &prediction, &panel)?;

    let samples_path = out_dir.join("flux_samples.csv");
    let mut w = csv::Writer::from_path(&samples_path)?;
    w.write_record(["seed", "T", "eps", "zeta", "value"])?;
    for sample in &samples {
        w.write_record([
            sim.seed.to_string(),
            (sample.t_end - sample.t_start).to_string(),
            sample.moll.eps.to_string(),
            sample.moll.zeta.to_string(),
            sample.value.to_string(),
        ])?;
    }
    w.flush()?;

    let report_path = out_dir.join("clt.csv");
    write_stat_reports(&report_path, &rows)?;
    let prediction_path = out_dir.join("clt_prediction.json");
    std::fs::write(&prediction_path, serde_json::to_string_pretty(&prediction)?)?;

    Ok(Outcome {
        pass: rows.iter().all(|r| r.pass),
        outputs: vec![samples_path, report_path, prediction_path],
    })
}
