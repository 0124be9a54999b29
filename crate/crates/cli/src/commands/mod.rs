//! One module per subcommand. Each `run` is a pure function of its parameter
//! set apart from the wall-clock field and the files it is asked to write.

pub mod dn_scan;
pub mod poisson_cauchy;
pub mod position_vs_levy;
pub mod simulate;
pub mod stokes_check;
pub mod young_check;

use std::path::Path;
use std::time::Instant;

use winding_core::curves::read_path_csv;
use winding_core::curves::sample_brownian;
use winding_core::curves::shapes::BuiltinCurve;
use winding_core::{PlanarPath, Result, RngSeed};

use crate::report::ExperimentReport;

/// A resolved `--curve` argument.
pub struct Curve {
    pub name: String,
    pub path: PlanarPath,
    pub exact_area: Option<f64>,
}

/// `brownian` samples a path from `steps` and `seed`, a built-in name selects
/// that curve, anything else is read as a `t,x,y` CSV file.
pub fn resolve_curve(spec: &str, steps: usize, seed: u64) -> Result<Curve> {
    if spec == "brownian" {
        return Ok(Curve { name: spec.into(), path: sample_brownian(steps, RngSeed(seed))?, exact_area: None });
    }
    if let Ok(b) = spec.parse::<BuiltinCurve>() {
        return Ok(Curve { name: b.name().into(), path: b.path(), exact_area: Some(b.exact_area()) });
    }
    Ok(Curve { name: spec.into(), path: read_path_csv(Path::new(spec))?, exact_area: None })
}

pub(crate) fn timed(mut report: ExperimentReport, f: impl FnOnce(&mut ExperimentReport) -> Result<()>) -> Result<ExperimentReport> {
    let start = Instant::now();
    f(&mut report)?;
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
