//! Command-line entry point. Exit codes: 0 on pass-or-complete, 1 on a
//! FAIL verdict, 2 on any error (bad config, I/O, numerical failure).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use okl::commands::{self, Outcome};
use okl::config::Config;
use okl::manifest::{module_versions, RunManifest};

#[derive(Parser)]
#[command(name = "okl", about = "Verification experiments for the open KPZ equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (flat key/value with [section] headers).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `sim.seed` from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (never affects numerical results).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory; defaults to $OKL_OUT_DIR, then ./okl-out.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Run one trajectory and persist it.
    Simulate,
    /// Compare long-run statistics with the invariant-measure prediction.
    Invariance,
    /// Ensemble flux statistics against the predicted Gaussian law.
    FluxClt,
    /// Closed-form spectral limits and identities.
    SpectralVerify,
    /// Golden degree tables and convergence checks of contraction graphs.
    DiagramCheck,
    /// Gaussian integration-by-parts residuals.
    IbpCheck,
    /// Tilted-density drift check with negative control.
    MartingaleCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Invariance => "invariance",
            Command::FluxClt => "flux-clt",
            Command::SpectralVerify => "spectral-verify",
            Command::DiagramCheck => "diagram-check",
            Command::IbpCheck => "ibp-check",
            Command::MartingaleCheck => "martingale-check",
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<(Outcome, Config, PathBuf, usize)> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.set("sim.seed", seed);
    }
    let threads = cli.threads.unwrap_or_else(num_cpus);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .ok();
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os("OKL_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("okl-out"));
    std::fs::create_dir_all(&out_dir)?;
    let outcome = match cli.command {
        Command::Simulate => commands::simulate::run(&cfg, &out_dir)?,
        Command::Invariance => commands::invariance::run(&cfg, &out_dir)?,
        Command::FluxClt => commands::flux_clt::run(&cfg, &out_dir)?,
        Command::SpectralVerify => commands::spectral::run(&cfg, &out_dir)?,
        Command::DiagramCheck => commands::diagram::run(&cfg, &out_dir)?,
        Command::IbpCheck => commands::ibp::run(&cfg, &out_dir)?,
        Command::MartingaleCheck => commands::martingale::run(&cfg, &out_dir)?,
    };
    Ok((outcome, cfg, out_dir, threads))
}

fn num_cpus() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match execute(&cli) {
        Ok((outcome, cfg, out_dir, threads)) => {
            let manifest = RunManifest {
                subcommand: cli.command.name().to_string(),
                config_hash: cfg.hash(),
                seed: cfg.u64("sim.seed", 1).unwrap_or(1),
                threads,
                module_versions: module_versions(),
                wall_clock_seconds: start.elapsed().as_secs_f64(),
                outputs: outcome
                    .outputs
                    .iter()
                    .map(|p| p.display().to_string())
                    .collect(),
                pass: outcome.pass,
            };
            if let Err(e) = manifest.write(&out_dir) {
                eprintln!("error: cannot write manifest: {e}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                println!("{}: PASS", cli.command.name());
                ExitCode::SUCCESS
            } else {
                println!("{}: FAIL", cli.command.name());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
