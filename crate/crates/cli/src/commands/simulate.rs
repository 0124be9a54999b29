use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::curves::write_path_csv;
use winding_core::curves::sample_brownian;
use winding_core::integrals::{levy_area, Scheme};
use winding_core::sum::pairwise_sum;
use winding_core::{Result, RngSeed};

use super::timed;
use crate::report::ExperimentReport;

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateParams {
    /// Number of Brownian increments.
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV (`t,x,y`).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(p: &SimulateParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("simulate", p), |r| {
        let path = sample_brownian(p.steps as usize, RngSeed(p.seed))?;
        write_path_csv(&p.out, &path)?;
        let dx2: Vec<f64> = path.points().windows(2).map(|w| (w[1].x - w[0].x).powi(2)).collect();
        r.estimates = json!({
            "vertices": path.len(),
            "quadratic_variation_x": pairwise_sum(&dx2),
            "levy_area": levy_area(&path, Scheme::Trapezoid),
        });
        Ok(())
    })
}
