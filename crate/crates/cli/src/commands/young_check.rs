use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::curves::{pl_skeleton, Dissection};
use winding_core::integrals::{line_integral_x_dy, shoelace_area, young_integral};
use winding_core::{Error, Result};

use super::{resolve_curve, timed};
use crate::report::{Check, ExperimentReport};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YoungCheckParams {
    /// `brownian`, a built-in curve name, or a CSV path file.
    #[arg(long, default_value = "circle")]
    pub curve: String,
    /// Brownian steps (ignored for other curves).
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Coarsest dyadic level.
    #[arg(long, default_value_t = 4)]
    pub min_level: u32,
    /// Finest dyadic level; the path must have vertices at its times.
    #[arg(long, default_value_t = 12)]
    pub max_level: u32,
    /// Convergence tolerance for the last Young sums.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub level: u32,
    pub mesh: f64,
    /// `|shoelace(skeleton) - shoelace(curve)|`.
    pub shoelace_gap: f64,
    /// `|Young sum on the level - ∫ x dy of the curve|`.
    pub young_gap: f64,
}

pub fn run(p: &YoungCheckParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("young-check", p), |r| {
        if p.min_level > p.max_level {
            return Err(Error::InvalidParameter(format!("min_level {} > max_level {}", p.min_level, p.max_level)));
        }
        let curve = resolve_curve(&p.curve, p.steps as usize, p.seed)?;
        let path = &curve.path;
        let levels: Vec<u32> = (p.min_level..=p.max_level).collect();
        let dissections = levels.iter().map(|&l| Dissection::dyadic(l)).collect::<Result<Vec<_>>>()?;
        let xs = path.xs();
        let ys = path.ys();
        let young = young_integral(path.times(), &xs, &ys, &dissections, p.tol)?;
        let full_shoelace = shoelace_area(path);
        let full_integral = line_integral_x_dy(path);
        let rows = levels
            .iter()
            .zip(&dissections)
            .zip(&young.sums)
            .map(|((&level, d), &sum)| {
                Ok(LevelRow {
                    level,
                    mesh: d.mesh(),
                    shoelace_gap: (shoelace_area(&pl_skeleton(path, d)?) - full_shoelace).abs(),
                    young_gap: (sum - full_integral).abs(),
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut checks = Vec::new();
        if rows.len() >= 2 {
            let (first, last) = (&rows[0], &rows[rows.len() - 1]);
            if p.curve == "brownian" {
                checks.push(Check::new(
                    "shoelace_gap_decreases",
                    last.shoelace_gap < first.shoelace_gap,
                    format!("level {}: {:.3e} -> level {}: {:.3e}", first.level, first.shoelace_gap, last.level, last.shoelace_gap),
                ));
            } else {
                let mono = |f: fn(&LevelRow) -> f64| rows.windows(2).all(|w| f(&w[1]) <= f(&w[0]));
                checks.push(Check::new("shoelace_gap_monotone", mono(|r| r.shoelace_gap), "non-increasing over levels"));
                checks.push(Check::new("young_gap_monotone", mono(|r| r.young_gap), "non-increasing over levels"));
            }
        }
        r.estimates = json!({
            "rows": rows,
            "shoelace_area": full_shoelace,
            "line_integral": full_integral,
            "young_integral": young.result.value,
        });
        r.diagnostics = json!({ "young_diagnostic": young.diagnostic, "young_converged": young.converged });
        r.checks = checks;
        Ok(())
    })
}
