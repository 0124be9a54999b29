//! Poisson point clouds and the normalized winding sum `(1/K) Σ θ(z)`.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::PlanarPath;
use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::seed::RngSeed;
use crate::winding::{WindingIndex, GRID_PADDING};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Point>,
    pub intensity: f64,
    pub window: Rect,
}

/// Path hull padded by 5% of its larger side on every side.
pub fn default_window(path: &PlanarPath) -> Rect {
    path.bbox().padded(GRID_PADDING, f64::MIN_POSITIVE)
}

fn poisson_count(rng: &mut impl Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let d = Poisson::new(mean).expect("finite positive mean");
    d.sample(rng) as u64
}

/// Draws the cloud point by point; `sample_poisson` and the ensemble both
/// go through here so they see identical points for a given seed.
fn for_each_point(intensity: f64, window: &Rect, seed: RngSeed, mut f: impl FnMut(Point)) -> Result<()> {
    if !(intensity > 0.0) || !intensity.is_finite() {
        return Err(Error::BadRate(intensity));
    }
    let mut rng = seed.rng();
    let count = poisson_count(&mut rng, intensity * window.area());
    let (w, h) = (window.width(), window.height());
    for _ in 0..count {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        f(Point::new(window.x_min + u * w, window.y_min + v * h));
    }
    Ok(())
}

/// Homogeneous Poisson process of intensity `intensity` restricted to `window`.
pub fn sample_poisson(intensity: f64, window: Rect, seed: RngSeed) -> Result<PointCloud> {
    let mut points = Vec::new();
    for_each_point(intensity, &window, seed, |p| points.push(p))?;
    Ok(PointCloud { points, intensity, window })
}

/// Keeps each point independently with probability `keep`.
pub fn thin(cloud: &PointCloud, keep: f64, seed: RngSeed) -> Result<PointCloud> {
    if !(keep > 0.0 && keep <= 1.0) {
        return Err(Error::InvalidParameter(format!("keep probability {keep} outside (0, 1]")));
    }
    let mut rng = seed.rng();
    Ok(PointCloud {
        points: cloud.points.iter().copied().filter(|_| rng.random::<f64>() < keep).collect(),
        intensity: cloud.intensity * keep,
        window: cloud.window,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WindingSum {
    /// `(1/K) Σ θ(z)` over the points not lying on the curve.
    pub value: f64,
    /// Signed integer total `Σ θ(z)`.
    pub total: i64,
    pub points: u64,
    /// Points skipped because they lie on the curve.
    pub skipped: u64,
}

fn accumulate(index: &WindingIndex<'_>, acc: &mut WindingSum, z: Point) {
    acc.points += 1;
    match index.query(z) {
        Ok(w) => acc.total += i64::from(w),
        Err(_) => acc.skipped += 1,
    }
}

fn check_window(path: &PlanarPath, window: &Rect) -> Result<()> {
    if !window.contains_rect(&path.bbox()) {
        return Err(Error::InvalidParameter("Poisson window must contain the path's bounding box".into()));
    }
    Ok(())
}

pub fn winding_sum_indexed(index: &WindingIndex<'_>, cloud: &PointCloud) -> Result<WindingSum> {
    check_window(index.path(), &cloud.window)?;
    let mut acc = WindingSum::default();
    for &z in &cloud.points {
        accumulate(index, &mut acc, z);
    }
    acc.value = acc.total as f64 / cloud.intensity;
    Ok(acc)
}

pub fn winding_sum(path: &PlanarPath, cloud: &PointCloud) -> Result<WindingSum> {
    winding_sum_indexed(&WindingIndex::new(path), cloud)
}

/// Independent winding sums over fresh Poisson clouds for one frozen path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialEnsemble {
    pub intensity: f64,
    pub window: Rect,
    pub values: Vec<f64>,
    pub skipped: u64,
    pub points: u64,
}

/// Trial `i` uses the cloud `sample_poisson(K, window, seed.derive("trial", i))`
/// with the default window, so the ensemble is independent of how trials are
/// scheduled across threads.
pub fn cauchy_trial_ensemble(path: &PlanarPath, intensity: f64, trials: usize, seed: RngSeed) -> Result<TrialEnsemble> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let window = default_window(path);
    let index = WindingIndex::new(path);
    let sums = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut acc = WindingSum::default();
            for_each_point(intensity, &window, trial_seed(seed, t), |z| accumulate(&index, &mut acc, z))?;
            acc.value = acc.total as f64 / intensity;
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialEnsemble {
        intensity,
        window,
        values: sums.iter().map(|s| s.value).collect(),
        skipped: sums.iter().map(|s| s.skipped).sum(),
        points: sums.iter().map(|s| s.points).sum(),
    })
}

pub fn trial_seed(seed: RngSeed, trial: usize) -> RngSeed {
    seed.derive("trial", trial as u64)
}

/// Normalized random sums from an empirical law: `(1/λ) Σ_{i<=P} X_i` with
/// `P ~ Poisson(λ)`, and `(1/λ) Σ_{i<=⌈λ⌉} X_i`, `draws` of each.
pub fn poissonization_check(samples: &[f64], lambda: f64, draws: usize, seed: RngSeed) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::BadRate(lambda));
    }
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let fixed = lambda.ceil() as u64;
    let draw_sum = |rng: &mut rand_chacha::ChaCha8Rng, count: u64| -> f64 {
        let mut s = 0.0;
        for _ in 0..count {
            s += samples[rng.random_range(0..samples.len())];
        }
        s / lambda
    };
    let poissonized = (0..draws)
        .into_par_iter()
        .map(|j| {
            let mut rng = seed.derive("poissonized", j as u64).rng();
            let count = poisson_count(&mut rng, lambda);
            draw_sum(&mut rng, count)
        })
        .collect();
    let fixed_count = (0..draws)
        .into_par_iter()
        .map(|j| draw_sum(&mut seed.derive("fixed", j as u64).rng(), fixed))
        .collect();
    Ok((poissonized, fixed_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{ks_two_sample, ks_two_sample_critical_value, sample_cauchy, CauchyParams};
    use crate::curves::shapes;
    use crate::integrals::shoelace_area;
    use std::f64::consts::PI;

    fn mean_se(v: &[f64]) -> (f64, f64) {
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    #[test]
    fn poisson_counts() {
        let w = Rect::new(0.0, 0.0, 10.0, 1.0);
        let counts: Vec<f64> = (0..10_000).map(|s| sample_poisson(10.0, w, RngSeed(s)).unwrap().points.len() as f64).collect();
        let (m, _) = mean_se(&counts);
        assert!((97.0..=103.0).contains(&m), "{m}");
        let c = sample_poisson(10.0, w, RngSeed(5)).unwrap();
        assert!(c.points.iter().all(|p| w.contains(*p)));
        assert_eq!(c, sample_poisson(10.0, w, RngSeed(5)).unwrap());
        assert!(sample_poisson(1e6, Rect::new(1.0, 1.0, 1.0, 3.0), RngSeed(1)).unwrap().points.is_empty());
        assert!(matches!(sample_poisson(0.0, w, RngSeed(1)), Err(Error::BadRate(_))));
    }

    #[test]
    fn circle_sums_estimate_area() {
        for (loops, target) in [(1, PI), (2, 2.0 * PI)] {
            let path = shapes::circle(512, loops);
            let e = cauchy_trial_ensemble(&path, 1e3, 200, RngSeed(10 + loops as u64)).unwrap();
            let (m, _) = mean_se(&e.values);
            assert!((m - target).abs() < 0.05 * target, "{m}");
            assert_eq!(e.skipped, 0);
        }
    }

    #[test]
    fn empty_cloud_sums_to_zero() {
        let path = shapes::unit_square();
        let cloud = PointCloud { points: vec![], intensity: 5.0, window: default_window(&path) };
        assert_eq!(winding_sum(&path, &cloud).unwrap().value, 0.0);
        let small = PointCloud { points: vec![], intensity: 5.0, window: Rect::new(0.0, 0.0, 0.5, 0.5) };
        assert!(winding_sum(&path, &small).is_err());
    }

    #[test]
    fn ensemble_matches_individual_clouds() {
        let path = shapes::parabola(64);
        let e = cauchy_trial_ensemble(&path, 500.0, 3, RngSeed(4)).unwrap();
        for t in 0..3 {
            let cloud = sample_poisson(500.0, e.window, trial_seed(RngSeed(4), t)).unwrap();
            assert_eq!(winding_sum(&path, &cloud).unwrap().value, e.values[t]);
        }
        assert_eq!(cauchy_trial_ensemble(&path, 500.0, 1, RngSeed(4)).unwrap().values.len(), 1);
        assert!(cauchy_trial_ensemble(&path, 500.0, 0, RngSeed(4)).is_err());
    }

    #[test]
    fn campbell_mean_on_bounded_curves() {
        for path in [shapes::unit_square_loop(), shapes::parabola(256), shapes::circle(256, 1)] {
            let e = cauchy_trial_ensemble(&path, 2000.0, 300, RngSeed(21)).unwrap();
            let (m, se) = mean_se(&e.values);
            let area = shoelace_area(&path);
            assert!((m - area).abs() < 3.5 * se, "mean {m} area {area} se {se}");
        }
    }

    #[test]
    fn enlarging_window_changes_nothing() {
        let path = shapes::circle(128, 1);
        let big = Rect::new(-3.0, -3.0, 3.0, 3.0);
        let cloud = sample_poisson(200.0, big, RngSeed(2)).unwrap();
        let small_window = default_window(&path);
        let inner = PointCloud {
            points: cloud.points.iter().copied().filter(|p| small_window.contains(*p)).collect(),
            intensity: 200.0,
            window: small_window,
        };
        assert_eq!(winding_sum(&path, &cloud).unwrap().total, winding_sum(&path, &inner).unwrap().total);
    }

    #[test]
    fn thinning_consistency() {
        let path = shapes::circle(128, 1);
        let window = default_window(&path);
        let index = WindingIndex::new(&path);
        let k = 50.0;
        let n = 400;
        let direct: Vec<f64> = (0..n)
            .map(|s| winding_sum_indexed(&index, &sample_poisson(k, window, RngSeed(s)).unwrap()).unwrap().value)
            .collect();
        let thinned: Vec<f64> = (0..n)
            .map(|s| {
                let dense = sample_poisson(2.0 * k, window, RngSeed(10_000 + s)).unwrap();
                winding_sum_indexed(&index, &thin(&dense, 0.5, RngSeed(20_000 + s)).unwrap()).unwrap().value
            })
            .collect();
        let d = ks_two_sample(&direct, &thinned).unwrap();
        assert!(d < ks_two_sample_critical_value(0.01, n as usize, n as usize), "{d}");
    }

    #[test]
    fn poissonization_point_mass() {
        let (pois, fixed) = poissonization_check(&[2.0], 10.5, 2000, RngSeed(3)).unwrap();
        assert!(fixed.iter().all(|&v| v == 11.0 * 2.0 / 10.5));
        let (m, se) = mean_se(&pois);
        assert!((m - 2.0).abs() < 4.0 * se, "{m}");
        assert!(matches!(poissonization_check(&[1.0], 0.5, 10, RngSeed(0)), Err(Error::BadRate(_))));
        assert!(poissonization_check(&[], 5.0, 10, RngSeed(0)).is_err());
    }

    #[test]
    fn poissonized_and_fixed_sums_share_a_law() {
        let source = sample_cauchy(CauchyParams::standard(), 10_000, RngSeed(8));
        let (a, b) = poissonization_check(&source, 1000.0, 500, RngSeed(9)).unwrap();
        assert!(ks_two_sample(&a, &b).unwrap() < ks_two_sample_critical_value(0.01, 500, 500));
    }
}
