use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::curves::sample_brownian;
use winding_core::integrals::{levy_area, Scheme};
use winding_core::measure::{full_tails, measure_from_field, position_parameter};
use winding_core::winding::{winding_field_with, FieldOptions, GridSpec};
use winding_core::Result;

use super::dn_scan::path_seed;
use super::timed;
use crate::report::{Check, ExperimentReport};
use crate::stats::{correlation_and_slope, mean};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionVsLevyParams {
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub paths: u64,
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub mask_radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    /// Tail-sum position estimate.
    pub position: f64,
    /// Trapezoid Lévy area.
    pub levy_area: f64,
    pub masked_area: f64,
}

pub fn run(p: &PositionVsLevyParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("position-vs-levy", p), |r| {
        let opts = FieldOptions { mask_radius_cells: p.mask_radius };
        let pairs = (0..p.paths)
            .into_par_iter()
            .map(|i| {
                let path = sample_brownian(p.steps as usize, path_seed(p.seed, i))?;
                let field = winding_field_with(&path, GridSpec::for_path(&path, p.grid as usize)?, opts)?;
                let m = measure_from_field(&field);
                Ok(Pair {
                    position: position_parameter(&full_tails(&m)),
                    levy_area: levy_area(&path, Scheme::Trapezoid),
                    masked_area: m.masked_area(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let x: Vec<f64> = pairs.iter().map(|q| q.levy_area).collect();
        let y: Vec<f64> = pairs.iter().map(|q| q.position).collect();
        let fit = correlation_and_slope(&x, &y);
        r.estimates = json!({
            "pairs": pairs,
            "correlation": fit.map(|f| f.0),
            "slope": fit.map(|f| f.1),
        });
        let masked: Vec<f64> = pairs.iter().map(|q| q.masked_area).collect();
        r.diagnostics = json!({ "mean_masked_area": mean(&masked) });
        if let Some((corr, slope)) = fit {
            r.checks = vec![
                Check::new("correlation", corr >= 0.95, format!("{corr:.5} >= 0.95")),
                Check::new("slope", (0.9..=1.1).contains(&slope), format!("{slope:.5} in [0.9, 1.1]")),
            ];
        }
        Ok(())
    })
}
