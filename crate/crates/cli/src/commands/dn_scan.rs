use std::f64::consts::PI;

use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::curves::sample_brownian;
use winding_core::measure::{measure_from_field, tails, TailTable};
use winding_core::winding::{winding_field_with, FieldOptions, GridSpec};
use winding_core::{Result, RngSeed};

use super::timed;
use crate::report::{Check, ExperimentReport};
use crate::stats::{mean, std_error};

/// Limit of `N * D_N`.
pub const LIMIT: f64 = 1.0 / (2.0 * PI);

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DnScanParams {
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    /// Ensemble size.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub paths: u64,
    /// Grid cells per side.
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Mask radius in cell sides.
    #[arg(long, default_value_t = 0.5)]
    pub mask_radius: f64,
}

/// One row of the scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DnRow {
    pub n: usize,
    /// Ensemble mean of `N * D_N`.
    pub mean_nd: f64,
    /// Same for the negative tail `N * D⁻_N`.
    pub mean_nd_minus: f64,
    pub std_error: Option<f64>,
    /// `N * mean masked area`: masked cells could carry any winding.
    pub masked_area_bound: f64,
    /// `N^(5/4) |mean_nd - 1/(2π)|`, logged for inspection only.
    pub remainder: f64,
    /// No path in the ensemble reaches winding `N`.
    pub empty: bool,
}

struct PathTails {
    table: TailTable,
    masked_area: f64,
    max_winding: usize,
}

pub fn path_seed(seed: u64, i: u64) -> RngSeed {
    RngSeed(seed).derive("path", i)
}

pub fn run(p: &DnScanParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("dn-scan", p), |r| {
        let n_max = p.n_max as usize;
        let opts = FieldOptions { mask_radius_cells: p.mask_radius };
        let per_path = (0..p.paths)
            .into_par_iter()
            .map(|i| {
                let path = sample_brownian(p.steps as usize, path_seed(p.seed, i))?;
                let field = winding_field_with(&path, GridSpec::for_path(&path, p.grid as usize)?, opts)?;
                let m = measure_from_field(&field);
                Ok(PathTails { table: tails(&m, n_max), masked_area: m.masked_area(), max_winding: m.max_abs_winding() })
            })
            .collect::<Result<Vec<_>>>()?;

        let masked: Vec<f64> = per_path.iter().map(|t| t.masked_area).collect();
        let mean_masked = mean(&masked);
        let rows: Vec<DnRow> = (1..=n_max)
            .map(|n| {
                let nd: Vec<f64> = per_path.iter().map(|t| n as f64 * t.table.d_plus(n)).collect();
                let nd_minus: Vec<f64> = per_path.iter().map(|t| n as f64 * t.table.d_minus(n)).collect();
                let mean_nd = mean(&nd);
                DnRow {
                    n,
                    mean_nd,
                    mean_nd_minus: mean(&nd_minus),
                    std_error: std_error(&nd),
                    masked_area_bound: n as f64 * mean_masked,
                    remainder: (n as f64).powf(1.25) * (mean_nd - LIMIT).abs(),
                    empty: per_path.iter().all(|t| t.max_winding < n),
                }
            })
            .collect();

        // π times the two-sided tail constant averaged over N in [2, 6]
        let window: Vec<f64> = rows
            .iter()
            .filter(|row| (2..=6).contains(&row.n))
            .map(|row| PI * (row.mean_nd + row.mean_nd_minus) / 2.0)
            .collect();
        let scale = if window.is_empty() { None } else { Some(mean(&window)) };

        r.estimates = json!({ "limit": LIMIT, "rows": rows, "scale": scale });
        r.diagnostics = json!({
            "mean_masked_area": mean_masked,
            "max_abs_winding": per_path.iter().map(|t| t.max_winding).max().unwrap_or(0),
        });
        r.checks = checks(&rows);
        Ok(())
    })
}

fn checks(rows: &[DnRow]) -> Vec<Check> {
    let mut out = Vec::new();
    if rows.len() >= 4 {
        let bad: Vec<String> = rows[..4]
            .iter()
            .filter(|row| (row.mean_nd - LIMIT).abs() > 0.15 * LIMIT)
            .map(|row| format!("N={}: {:.5}", row.n, row.mean_nd))
            .collect();
        let detail = if bad.is_empty() { "N=1..4 within 15%".to_string() } else { format!("outside [{:.5}, {:.5}]: {}", 0.85 * LIMIT, 1.15 * LIMIT, bad.join(", ")) };
        out.push(Check::new("nd_within_15pct", bad.is_empty(), detail));
    }
    if rows.len() >= 2 {
        let (d1, d2) = ((rows[0].mean_nd - LIMIT).abs(), (rows[1].mean_nd - LIMIT).abs());
        let se = rows[1].std_error.unwrap_or(0.0).max(rows[0].std_error.unwrap_or(0.0));
        out.push(Check::new(
            "deviation_not_increasing",
            d2 <= d1 + se,
            format!("|dev| N=1: {d1:.5}, N=2: {d2:.5}, se {se:.5}"),
        ));
    }
    out
}
