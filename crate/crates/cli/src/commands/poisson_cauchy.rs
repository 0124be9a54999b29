use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::cauchy::{ks_critical_value, ks_statistic, quantile_fit, CauchyParams};
use winding_core::curves::{pl_skeleton, Dissection};
use winding_core::integrals::{levy_area, Scheme};
use winding_core::poisson::{cauchy_trial_ensemble, TrialEnsemble};
use winding_core::{Error, PlanarPath, Result, RngSeed};

use super::{resolve_curve, timed};
use crate::report::{Check, ExperimentReport};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonCauchyParams {
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    /// Poisson intensity.
    #[arg(long = "k", default_value_t = 1e4)]
    pub k: f64,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Seeds the path; trial clouds use a seed derived from it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// `brownian`, a built-in curve name, or a CSV path file.
    #[arg(long, default_value = "brownian")]
    pub curve: String,
    /// Coarse skeleton size of the same Brownian path, for the scale
    /// comparison (0 disables it).
    #[arg(long, default_value_t = 1 << 12)]
    pub lineage_steps: u64,
    /// Ensemble CSV `trial,S_K`.
    #[arg(long)]
    pub ensemble_csv: Option<PathBuf>,
    /// Summary JSON `{K, trials, position, scale, ks, skipped}`.
    #[arg(long)]
    pub summary_json: Option<PathBuf>,
}

/// Fit of one ensemble against the reference Lévy area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFit {
    pub steps: usize,
    pub levy_area: f64,
    pub position: f64,
    pub scale: f64,
    /// KS distance to the fitted law.
    pub ks: f64,
    /// KS distance to the limit law centred at the Lévy area with scale ½.
    pub ks_limit: f64,
    pub skipped: u64,
    pub points: u64,
}

fn fit(path: &PlanarPath, e: &TrialEnsemble) -> Result<EnsembleFit> {
    let fitted = quantile_fit(&e.values)?;
    let a = levy_area(path, Scheme::Trapezoid);
    let ks = if fitted.scale > 0.0 { ks_statistic(&e.values, fitted)? } else { 1.0 };
    Ok(EnsembleFit {
        steps: path.len() - 1,
        levy_area: a,
        position: fitted.position,
        scale: fitted.scale,
        ks,
        ks_limit: ks_statistic(&e.values, CauchyParams::new(a, 0.5)?)?,
        skipped: e.skipped,
        points: e.points,
    })
}

pub fn trials_seed(seed: u64) -> RngSeed {
    RngSeed(seed).derive("trials", 0)
}

pub fn run(p: &PoissonCauchyParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("poisson-cauchy", p), |r| {
        if p.k.is_nan() || p.k <= 0.0 {
            return Err(Error::BadRate(p.k));
        }
        let curve = resolve_curve(&p.curve, p.steps as usize, p.seed)?;
        let trials = p.trials as usize;
        let ensemble = cauchy_trial_ensemble(&curve.path, p.k, trials, trials_seed(p.seed))?;
        let main = fit(&curve.path, &ensemble)?;

        let lineage = p.curve == "brownian" && p.lineage_steps > 0 && p.lineage_steps < p.steps && p.steps.is_multiple_of(p.lineage_steps);
        let coarse = if lineage {
            let skel = pl_skeleton(&curve.path, &Dissection::uniform(p.lineage_steps as usize)?)?;
            let e = cauchy_trial_ensemble(&skel, p.k, trials, trials_seed(p.seed))?;
            Some(fit(&skel, &e)?)
        } else {
            None
        };

        if let Some(file) = &p.ensemble_csv {
            write_ensemble(file, &ensemble.values)?;
        }
        if let Some(file) = &p.summary_json {
            let summary = json!({
                "K": p.k,
                "trials": trials,
                "position": main.position,
                "scale": main.scale,
                "ks": main.ks,
                "skipped": main.skipped,
            });
            let text = serde_json::to_string_pretty(&summary)? + "\n";
            std::fs::write(file, text).map_err(|e| Error::io(file, e))?;
        }

        let band = 3.0 * main.scale / (trials as f64).sqrt() * (PI / 2.0);
        let ks_crit = ks_critical_value(0.05, trials);
        let mut checks = vec![
            Check::new(
                "position_band",
                (main.position - main.levy_area).abs() <= band,
                format!("|{:.6} - {:.6}| <= {band:.3e}", main.position, main.levy_area),
            ),
            Check::new("ks_fitted", main.ks < ks_crit, format!("{:.5} < {ks_crit:.5}", main.ks)),
            Check::new("scale_range", (0.25..=0.65).contains(&main.scale), format!("{:.5} in [0.25, 0.65]", main.scale)),
        ];
        if let Some(c) = &coarse {
            checks.push(Check::new(
                "scale_increases",
                main.scale > c.scale,
                format!("{} steps: {:.5} > {} steps: {:.5}", main.steps, main.scale, c.steps, c.scale),
            ));
        }
        r.estimates = json!({ "fit": main, "coarse": coarse, "ks_critical_5pct": ks_crit });
        r.diagnostics = json!({
            "skipped": ensemble.skipped,
            "points": ensemble.points,
            "window": ensemble.window,
        });
        r.checks = checks;
        Ok(())
    })
}

fn write_ensemble(file: &Path, values: &[f64]) -> Result<()> {
    let mut text = String::from("trial,S_K\n");
    for (i, v) in values.iter().enumerate() {
        text.push_str(&format!("{i},{v:.16e}\n"));
    }
    std::fs::write(file, text).map_err(|e| Error::io(file, e))
}
