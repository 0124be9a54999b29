//! End-to-end use of the public API on a single Brownian path.

use winding_core::cauchy::{quantile_fit, sine_estimator};
use winding_core::curves::{bridge_refine, pl_skeleton, sample_brownian, Dissection};
use winding_core::integrals::{levy_area, shoelace_area, stokes_residual, Scheme};
use winding_core::measure::{full_tails, measure_from_field, moment_sum, position_parameter};
use winding_core::poisson::{cauchy_trial_ensemble, winding_sum, default_window, sample_poisson};
use winding_core::winding::{winding_field, winding_number, GridSpec, WindingIndex};
use winding_core::RngSeed;

#[test]
fn brownian_pipeline_is_consistent() {
    let path = sample_brownian(1 << 12, RngSeed(31)).unwrap();
    let a = levy_area(&path, Scheme::Trapezoid);
    assert!((a - shoelace_area(&path)).abs() < 1e-12);

    let field = winding_field(&path, GridSpec::for_path(&path, 1024).unwrap()).unwrap();
    let s = stokes_residual(&path, &field);
    assert!(s.residual <= s.bound);

    let m = measure_from_field(&field);
    let p = position_parameter(&full_tails(&m));
    assert!((p - moment_sum(&m)).abs() < 1e-9);

    let cloud = sample_poisson(2000.0, default_window(&path), RngSeed(2)).unwrap();
    let index = WindingIndex::new(&path);
    for z in cloud.points.iter().take(500) {
        if let Ok(w) = winding_number(&path, *z) {
            assert_eq!(index.query(*z).unwrap(), w);
        }
    }
    let direct = winding_sum(&path, &cloud).unwrap();
    assert!(direct.value.is_finite());

    let e = cauchy_trial_ensemble(&path, 2000.0, 200, RngSeed(3)).unwrap();
    let fit = quantile_fit(&e.values).unwrap();
    assert!((fit.position - a).abs() < 0.02, "{} vs {a}", fit.position);
    let sine = sine_estimator(&e.values, 1.0).unwrap();
    assert!((sine - a).abs() < 0.05, "{sine} vs {a}");
}

#[test]
fn refinement_lineage_keeps_vertices() {
    let coarse = sample_brownian(256, RngSeed(8)).unwrap();
    let fine = bridge_refine(&bridge_refine(&coarse, RngSeed(9)).unwrap(), RngSeed(10)).unwrap();
    assert_eq!(fine.len(), 4 * 256 + 1);
    let back = pl_skeleton(&fine, &Dissection::uniform(256).unwrap()).unwrap();
    assert_eq!(back.points(), coarse.points());
}
