//! `spectral-verify`: the closed-form limit battery — window constant,
//! partial-fraction identities, and the mollification limits of the
//! second- and fourth-chaos boundary terms.

use std::path::Path;

use okl_lattice::{BoundaryParams, GridSpec};
use okl_spectral::{
    bluecherry_mean, boundary_fourth_chaos, cherry_variance_limit, elkrbr_mean_limit,
    even_mode_fourth_chaos_limit, partial_fraction_sum, v_psi, v_psi_riemann,
    zero_mode_fourth_chaos, PartialFractionVariant,
};
use serde::Serialize;

use super::Outcome;
use crate::config::Config;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn row(name: &str, value: f64, target: f64, tolerance: f64) -> Row {
    Row {
        name: name.to_string(),
        value,
        target,
        tolerance,
        pass: (value - target).abs() <= tolerance,
    }
}

/// Runs the full battery. Every limit is taken along its mollification
/// sequence down to scale `2^-8`; the reported value is the final element.
pub fn battery() -> Vec<Row> {
    let mut rows = Vec::new();
    let l = 1.0;

    // Window constant by two independent routes; positivity.
    let quad = v_psi(60.0, 0.25);
    let lattice = v_psi_riemann(1.0 / 32.0, 40.0);
    rows.push(row("v_psi_routes", quad, lattice, 1e-3 * lattice.abs()));
    let mut positive = row("v_psi_positive", quad, quad.max(0.0), 0.0);
    positive.pass = quad > 0.0;
    rows.push(positive);

    // Partial-fraction families vanish; truncation decays like 1/K.
    let k_euler = 1_000_000i64;
    for n in 1..=3i64 {
        for (variant, tag) in [
            (PartialFractionVariant::Cubic, "cubic"),
            (PartialFractionVariant::Quartic, "quartic"),
        ] {
            let s = partial_fraction_sum(n, variant, k_euler);
            rows.push(row(
                &format!("euler_{tag}_n{n}"),
                s,
                0.0,
                10.0 / k_euler as f64,
            ));
        }
    }

    // Second-chaos boundary mean -> -(u^3+v^3)/6.
    let grid = GridSpec::new(l, 8192).expect("valid grid");
    let eps_seq = [0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625];
    for (u, v, tag) in [(1.0, 0.0, "10"), (1.0, 1.0, "11")] {
        let p = BoundaryParams::new(u, v);
        let last = eps_seq
            .iter()
            .map(|&e| bluecherry_mean(p, e, grid).expect("valid scales"))
            .next_back()
            .unwrap();
        let target = -(u * u * u + v * v * v) / 6.0;
        rows.push(row(&format!("bluecherry_{tag}"), last, target, 1e-2));
    }

    // Gradient-pairing mean -> -(u^2+v^2) V_psi / 4 (two significant digits).
    let p10 = BoundaryParams::new(1.0, 0.0);
    let elk = elkrbr_mean_limit(p10, l, 4096, &eps_seq);
    let elk_target = -lattice / 4.0;
    rows.push(row(
        "elkrbr_10",
        *elk.last().unwrap(),
        elk_target,
        0.05 * elk_target.abs(),
    ));

    // Cherry variance -> T (u^2+v^2) V_psi (two significant digits).
    let t_horizon = 1.0;
    let cherry = cherry_variance_limit(p10, l, t_horizon, 4096, &eps_seq);
    let cherry_target = t_horizon * lattice;
    rows.push(row(
        "cherry_variance_10",
        *cherry.last().unwrap(),
        cherry_target,
        0.05 * cherry_target.abs(),
    ));

    // Fourth-chaos zero mode -> -1/3.
    let zeta_seq = [0.015625, 0.0078125, 0.00390625];
    let zero = zero_mode_fourth_chaos(l, &zeta_seq, 8192);
    rows.push(row("zero_mode", *zero.last().unwrap(), -1.0 / 3.0, 1e-2));

    // Boundary fourth-chaos pairing -> (u+v)/6.
    let p11 = BoundaryParams::new(1.0, 1.0);
    let boundary = boundary_fourth_chaos(p11, 0.25, l, &zeta_seq, 4096);
    rows.push(row(
        "boundary_fourth_chaos_11",
        *boundary.last().unwrap(),
        (p11.u + p11.v) / 6.0,
        1e-2,
    ));

    // Nonzero even modes vanish in the limit.
    for n in 1..=3i64 {
        rows.push(row(
            &format!("even_mode_n{n}"),
            even_mode_fourth_chaos_limit(n, 100_000),
            0.0,
            1e-2,
        ));
    }

    rows
}

pub fn run(_cfg: &Config, out_dir: &Path) -> anyhow::Result<Outcome> {
    let rows = battery();
    let path = out_dir.join("spectral.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["name", "value", "target", "tolerance", "pass"])?;
    for r in &rows {
        w.write_record([
            r.name.clone(),
            r.value.to_string(),
            r.target.to_string(),
            r.tolerance.to_string(),
            r.pass.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(Outcome {
        pass: rows.iter().all(|r| r.pass),
        outputs: vec![path],
    })
}
