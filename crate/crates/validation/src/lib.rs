//! Acceptance criteria. Each criterion is a function returning an
//! [`Outcome`]; [`run`] evaluates a selection and prints one line per
//! criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::StandardNormal;
use winding_cli::commands::{dn_scan, poisson_cauchy, position_vs_levy, simulate, stokes_check, young_check};
use winding_cli::ExperimentReport;
use winding_core::cauchy::{ks_two_sample, ks_two_sample_critical_value, sample_cauchy, CauchyParams};
use winding_core::curves::{curve_length, pl_skeleton, restrict, sample_brownian, shapes, Dissection};
use winding_core::integrals::{levy_area, shoelace_area, Scheme};
use winding_core::measure::{measure_from_field, moment_sum};
use winding_core::poisson::poissonization_check;
use winding_core::winding::{angle_winding_oracle, winding_field, winding_number, GridSpec};
use winding_core::{Error, PlanarPath, Point, Rect, RngSeed};

pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

pub type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn random_polyline(rng: &mut impl Rng, n: usize) -> PlanarPath {
    let points = (0..n).map(|_| Point::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    PlanarPath::uniform(points).unwrap()
}

fn random_point(rng: &mut impl Rng, r: &Rect) -> Point {
    Point::new(rng.random_range(r.x_min..r.x_max), rng.random_range(r.y_min..r.y_max))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn check_failed(report: &ExperimentReport) -> Vec<String> {
    report.checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect()
}

pub fn pl_stokes() -> Outcome {
    let start = Instant::now();
    let mut rng = RngSeed(101).rng();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=500);
        let path = random_polyline(&mut rng, n);
        let (a, s) = (levy_area(&path, Scheme::Trapezoid), shoelace_area(&path));
        worst = worst.max((a - s).abs() / a.abs());
    }
    let t = start.elapsed();
    outcome(worst <= 1e-12 && t < Duration::from_secs(1), format!("max rel err {worst:.2e} <= 1e-12, {} < 1s", secs(t)))
}

pub fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = RngSeed(102).rng();
    let (mut queries, mut mismatches) = (0, 0);
    while queries < 10_000 {
        let n = rng.random_range(2..=200);
        let path = random_polyline(&mut rng, n);
        let window = path.bbox().padded(0.1, 0.1);
        for _ in 0..10 {
            let z = random_point(&mut rng, &window);
            match (winding_number(&path, z), angle_winding_oracle(&path, z)) {
                (Ok(a), Ok(b)) => {
                    queries += 1;
                    mismatches += usize::from(a != b);
                }
                (Err(Error::PointOnCurve { .. }), Err(Error::PointOnCurve { .. })) => {}
                _ => mismatches += 1,
            }
        }
    }
    let t = start.elapsed();
    outcome(mismatches == 0 && t < Duration::from_secs(10), format!("{mismatches} mismatches in {queries} queries, {} < 10s", secs(t)))
}

pub fn additivity() -> Outcome {
    let mut rng = RngSeed(103).rng();
    let (mut checked, mut failures) = (0, 0);
    for s in 0..100 {
        let path = sample_brownian(1 << 10, RngSeed(1000 + s)).unwrap();
        let cuts: Vec<usize> = (0..=8).map(|k| k * 128).collect();
        let skeleton = pl_skeleton(&path, &Dissection::from_indices(&path, &cuts).unwrap()).unwrap();
        let pieces: Vec<PlanarPath> = cuts.windows(2).map(|w| restrict(&path, w[0], w[1]).unwrap()).collect();
        let window = path.bbox().padded(0.05, 0.0);
        let mut valid = 0;
        while valid < 100 {
            let z = random_point(&mut rng, &window);
            let parts: Result<Vec<i32>, _> = std::iter::once(&skeleton).chain(&pieces).map(|p| winding_number(p, z)).collect();
            let (Ok(whole), Ok(parts)) = (winding_number(&path, z), parts) else { continue };
            valid += 1;
            checked += 1;
            failures += usize::from(whole != parts.iter().sum::<i32>());
        }
    }
    outcome(failures == 0, format!("{failures} failures at {checked} points"))
}

pub fn analytic_areas() -> Outcome {
    let start = Instant::now();
    let circle = shapes::circle(4096, 1);
    let m = measure_from_field(&winding_field(&circle, GridSpec::for_path(&circle, 1024).unwrap()).unwrap());
    let circle_err = (m.get(1) - PI).abs() / PI;
    let parabola = shapes::parabola(4096);
    let m = measure_from_field(&winding_field(&parabola, GridSpec::for_path(&parabola, 1024).unwrap()).unwrap());
    let parabola_err = (moment_sum(&m) - 1.0 / 6.0).abs() * 6.0;
    let t = start.elapsed();
    outcome(
        circle_err <= 0.01 && parabola_err <= 0.01 && t < Duration::from_secs(30),
        format!("circle mu(1) rel err {circle_err:.2e}, parabola moment rel err {parabola_err:.2e}, {} < 30s", secs(t)),
    )
}

pub fn dn_law() -> Outcome {
    let p = dn_scan::DnScanParams { steps: 1 << 16, paths: 200, grid: 2048, n_max: 8, seed: 5, mask_radius: 0.5 };
    let r = dn_scan::run(&p).unwrap();
    let rows: Vec<String> = r.estimates["rows"]
        .as_array()
        .unwrap()
        .iter()
        .take(4)
        .map(|row| format!("N={} {:.4}", row["n"], row["mean_nd"].as_f64().unwrap()))
        .collect();
    let t = Duration::from_secs_f64(r.wall_clock_seconds);
    let failed = check_failed(&r);
    outcome(
        failed.is_empty() && t < Duration::from_secs(1800),
        format!("N*D_N: {} vs 1/(2pi) = {:.5}; failed: {:?}; {}", rows.join(", "), dn_scan::LIMIT, failed, secs(t)),
    )
}

pub fn position_vs_levy() -> Outcome {
    let p = position_vs_levy::PositionVsLevyParams { steps: 1 << 16, paths: 100, grid: 4096, seed: 6, mask_radius: 0.5 };
    let r = position_vs_levy::run(&p).unwrap();
    let failed = check_failed(&r);
    outcome(
        failed.is_empty(),
        format!(
            "correlation {:.4}, slope {:.4} at 4096^2; failed: {:?}",
            r.estimates["correlation"].as_f64().unwrap(),
            r.estimates["slope"].as_f64().unwrap(),
            failed
        ),
    )
}

pub fn poisson_cauchy() -> Outcome {
    let p = poisson_cauchy::PoissonCauchyParams {
        steps: 1 << 16,
        k: 1e4,
        trials: 500,
        seed: 7,
        curve: "brownian".into(),
        lineage_steps: 1 << 12,
        ensemble_csv: None,
        summary_json: None,
    };
    let r = poisson_cauchy::run(&p).unwrap();
    let fit = &r.estimates["fit"];
    let t = Duration::from_secs_f64(r.wall_clock_seconds);
    let failed = check_failed(&r);
    outcome(
        failed.is_empty() && t < Duration::from_secs(600),
        format!(
            "A={:.5} position={:.5} scale={:.5} (2^12: {:.5}) ks={:.4}; failed: {:?}; {}",
            fit["levy_area"].as_f64().unwrap(),
            fit["position"].as_f64().unwrap(),
            fit["scale"].as_f64().unwrap(),
            r.estimates["coarse"]["scale"].as_f64().unwrap(),
            fit["ks"].as_f64().unwrap(),
            failed,
            secs(t)
        ),
    )
}

pub fn banchoff_pohl() -> Outcome {
    fn excess(path: &PlanarPath, grid: usize) -> f64 {
        let field = winding_field(path, GridSpec::for_path(path, grid).unwrap()).unwrap();
        let m = measure_from_field(&field);
        let max_n2 = (m.max_abs_winding() as f64).powi(2);
        let l = curve_length(path);
        let rhs = l * l / (4.0 * PI) + (m.masked_area() + l * field.grid().cell) * max_n2;
        m.second_moment() - rhs
    }
    let mut rng = RngSeed(108).rng();
    let mut violations = 0;
    for _ in 0..200 {
        let n = rng.random_range(3..=200);
        violations += usize::from(excess(&random_polyline(&mut rng, n), 512) > 0.0);
    }
    for s in 0..50 {
        violations += usize::from(excess(&sample_brownian(1 << 16, RngSeed(8000 + s)).unwrap(), 2048) > 0.0);
    }
    outcome(violations == 0, format!("{violations} violations in 250 curves"))
}

pub fn poissonization() -> Outcome {
    let crit = ks_two_sample_critical_value(0.01, 1000, 1000);
    let below = (0..100u64)
        .filter(|&rep| {
            let seed = RngSeed(9).derive("rep", rep);
            let source = sample_cauchy(CauchyParams::standard(), 10_000, seed.derive("source", 0));
            let (a, b) = poissonization_check(&source, 1e4, 1000, seed).unwrap();
            ks_two_sample(&a, &b).unwrap() < crit
        })
        .count();
    outcome(below >= 95, format!("{below}/100 repetitions below {crit:.4}"))
}

pub fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run_all = |threads: usize, tag: &str| -> Vec<String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let out = dir.path().join(format!("path-{tag}.csv"));
            let csv = dir.path().join(format!("ens-{tag}.csv"));
            let summary = dir.path().join(format!("summary-{tag}.json"));
            let mut reports = vec![
                simulate::run(&simulate::SimulateParams { steps: 1 << 12, seed: 3, out: out.clone() }).unwrap(),
                dn_scan::run(&dn_scan::DnScanParams { steps: 1 << 12, paths: 6, grid: 256, n_max: 4, seed: 3, mask_radius: 0.5 }).unwrap(),
                position_vs_levy::run(&position_vs_levy::PositionVsLevyParams { steps: 1 << 12, paths: 6, grid: 256, seed: 3, mask_radius: 0.5 }).unwrap(),
                poisson_cauchy::run(&poisson_cauchy::PoissonCauchyParams {
                    steps: 1 << 12,
                    k: 1e3,
                    trials: 40,
                    seed: 3,
                    curve: "brownian".into(),
                    lineage_steps: 1 << 8,
                    ensemble_csv: Some(csv.clone()),
                    summary_json: Some(summary.clone()),
                })
                .unwrap(),
                stokes_check::run(&stokes_check::StokesCheckParams { curve: "all".into(), grid: 256, mask_radius: 0.5 }).unwrap(),
                young_check::run(&young_check::YoungCheckParams { curve: "brownian".into(), steps: 1 << 12, seed: 3, min_level: 4, max_level: 12, tol: 1e-3 }).unwrap(),
            ];
            // file outputs are named per run; compare their contents only
            for r in &mut reports {
                for key in ["out", "ensemble_csv", "summary_json"] {
                    if let Some(v) = r.params.get_mut(key) {
                        *v = serde_json::Value::Null;
                    }
                }
            }
            let mut texts: Vec<String> = reports.iter().map(|r| r.to_json_without_timing()).collect();
            for f in [out, csv, summary] {
                texts.push(std::fs::read_to_string(f).unwrap());
            }
            texts
        })
    };
    let a = run_all(1, "a");
    let b = run_all(4, "b");
    let c = run_all(4, "c");
    let differing = a.iter().zip(&b).zip(&c).filter(|((x, y), z)| x != y || y != z).count();
    outcome(differing == 0, format!("{differing} of {} outputs differ across reruns with 1 and 4 workers", a.len()))
}

pub const CRITERIA: [Criterion; 10] = [
    ("PL Stokes identity", pl_stokes),
    ("winding oracle agreement", oracle_agreement),
    ("concatenation additivity", additivity),
    ("analytic areas", analytic_areas),
    ("D_N law", dn_law),
    ("position parameter vs Levy area", position_vs_levy),
    ("Poisson Cauchy limit", poisson_cauchy),
    ("Banchoff-Pohl", banchoff_pohl),
    ("Poissonization", poissonization),
    ("determinism", determinism),
];

/// Runs the criteria whose 1-based numbers are in `only` (all if empty) and
/// returns the numbers of those that failed.
pub fn run(only: &[usize]) -> Vec<usize> {
    let mut failed = Vec::new();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let o = f();
        println!("criterion {id:>2} {}: {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed.push(id);
        }
    }
    failed
}
