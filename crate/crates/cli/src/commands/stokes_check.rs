use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use winding_core::curves::shapes::BuiltinCurve;
use winding_core::integrals::stokes_residual;
use winding_core::winding::{winding_field_with, FieldOptions, GridSpec};
use winding_core::Result;

use super::{resolve_curve, timed, Curve};
use crate::report::{Check, ExperimentReport};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesCheckParams {
    /// `all` for the built-in suite, a built-in name, or a CSV path file.
    #[arg(long, default_value = "all")]
    pub curve: String,
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid: u64,
    #[arg(long, default_value_t = 0.5)]
    pub mask_radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesRow {
    pub curve: String,
    pub levy_area: f64,
    pub grid_integral: f64,
    pub residual: f64,
    pub bound: f64,
    pub masked_area: f64,
    pub max_abs_winding: i32,
    /// Area enclosed by the smooth curve, for built-ins.
    pub exact_area: Option<f64>,
}

pub fn run(p: &StokesCheckParams) -> Result<ExperimentReport> {
    timed(ExperimentReport::new("stokes-check", p), |r| {
        let curves: Vec<Curve> = if p.curve == "all" {
            BuiltinCurve::ALL
                .iter()
                .map(|b| Curve { name: b.name().into(), path: b.path(), exact_area: Some(b.exact_area()) })
                .collect()
        } else {
            vec![resolve_curve(&p.curve, 1, 0)?]
        };
        let opts = FieldOptions { mask_radius_cells: p.mask_radius };
        let mut rows = Vec::new();
        let mut checks = Vec::new();
        for c in curves {
            let field = winding_field_with(&c.path, GridSpec::for_path(&c.path, p.grid as usize)?, opts)?;
            let s = stokes_residual(&c.path, &field);
            checks.push(Check::new(
                &format!("{}_residual_within_bound", c.name),
                s.residual <= s.bound,
                format!("{:.3e} <= {:.3e}", s.residual, s.bound),
            ));
            if c.name == BuiltinCurve::Parabola.name() {
                let exact = BuiltinCurve::Parabola.exact_area();
                let rel = (s.grid_integral - exact).abs() / exact;
                checks.push(Check::new("parabola_area_1pct", rel <= 0.01, format!("grid {:.6} vs 1/6, rel {rel:.2e}", s.grid_integral)));
            }
            rows.push(StokesRow {
                curve: c.name,
                levy_area: s.levy_area,
                grid_integral: s.grid_integral,
                residual: s.residual,
                bound: s.bound,
                masked_area: s.masked_area,
                max_abs_winding: s.max_abs_winding,
                exact_area: c.exact_area,
            });
        }
        r.estimates = json!({ "rows": rows });
        r.checks = checks;
        Ok(())
    })
}
