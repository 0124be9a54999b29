use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use winding_cli::commands::{dn_scan, poisson_cauchy, position_vs_levy, simulate, stokes_check, young_check};
use winding_cli::ExperimentReport;

#[derive(Parser)]
#[command(name = "winding", version, about = "Winding-number experiments on planar Brownian paths")]
struct Cli {
    /// Worker threads (output does not depend on it).
    #[arg(long, global = true, env = "WINDING_WORKERS")]
    workers: Option<usize>,
    /// JSON object whose keys override the subcommand flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Exit with status 3 if any check fails.
    #[arg(long, global = true)]
    assert: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a Brownian path and write it as CSV.
    Simulate(simulate::SimulateParams),
    /// Ensemble means of N·D_N.
    DnScan(dn_scan::DnScanParams),
    /// Tail-sum position estimate against the Lévy area.
    PositionVsLevy(position_vs_levy::PositionVsLevyParams),
    /// Poisson winding sums and their Cauchy fit.
    PoissonCauchy(poisson_cauchy::PoissonCauchyParams),
    /// Lévy area against the grid winding integral.
    StokesCheck(stokes_check::StokesCheckParams),
    /// Skeleton and Young-sum convergence over dyadic levels.
    YoungCheck(young_check::YoungCheckParams),
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn apply_config<T: Serialize + DeserializeOwned>(params: T, config: &Value) -> Result<T, String> {
    let Value::Object(overrides) = config else {
        return Err("config must be a JSON object".into());
    };
    let mut merged = serde_json::to_value(params).map_err(|e| e.to_string())?;
    let fields = merged.as_object_mut().expect("parameters serialize to an object");
    for (key, value) in overrides {
        let key = key.replace('-', "_");
        if !fields.contains_key(&key) {
            return Err(format!("unknown config key `{key}`"));
        }
        fields.insert(key, value.clone());
    }
    serde_json::from_value(merged).map_err(|e| e.to_string())
}

fn configured<T: Serialize + DeserializeOwned>(params: T, config: Option<&Value>) -> Result<T, String> {
    match config {
        Some(c) => apply_config(params, c),
        None => Ok(params),
    }
}

fn dispatch(command: Command, config: Option<&Value>) -> Result<winding_core::Result<ExperimentReport>, String> {
    Ok(match command {
        Command::Simulate(p) => {
            let p = configured(p, config)?;
            simulate::run(&p)
        }
        Command::DnScan(p) => dn_scan::run(&configured(p, config)?),
        Command::PositionVsLevy(p) => position_vs_levy::run(&configured(p, config)?),
        Command::PoissonCauchy(p) => poisson_cauchy::run(&configured(p, config)?),
        Command::StokesCheck(p) => stokes_check::run(&configured(p, config)?),
        Command::YoungCheck(p) => young_check::run(&configured(p, config)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(file) => match std::fs::read_to_string(file).map_err(|e| e.to_string()).and_then(|s| serde_json::from_str::<Value>(&s).map_err(|e| e.to_string())) {
            Ok(v) => Some(v),
            Err(e) => return usage_error(format!("{}: {e}", file.display())),
        },
        None => None,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            return usage_error("--workers must be >= 1");
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let report = match pool.install(|| dispatch(cli.command, config.as_ref())) {
        Err(msg) => return usage_error(msg),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
        Ok(Ok(r)) => r,
    };
    println!("{}", report.to_json());
    if let Some(file) = &cli.report {
        if let Err(e) = report.write(file) {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("check failed: {} ({})", c.name, c.detail);
    }
    if cli.assert && !report.all_passed() {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
