//! Cauchy laws: distribution function, sampling, robust fitting, the
//! truncated-mean and sine position estimators, and Kolmogorov–Smirnov
//! statistics.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::RngSeed;
use crate::sum::pairwise_sum;

/// Position `p` and scale `σ >= 0`; `σ = 0` is the point mass at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyParams {
    pub position: f64,
    pub scale: f64,
}

impl CauchyParams {
    pub fn new(position: f64, scale: f64) -> Result<Self> {
        if !position.is_finite() || !(scale >= 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!("bad Cauchy parameters ({position}, {scale})")));
        }
        Ok(CauchyParams { position, scale })
    }

    pub fn standard() -> Self {
        CauchyParams { position: 0.0, scale: 1.0 }
    }
}

pub fn cauchy_cdf(params: CauchyParams, x: f64) -> f64 {
    if params.scale == 0.0 {
        return if x >= params.position { 1.0 } else { 0.0 };
    }
    0.5 + ((x - params.position) / params.scale).atan() / PI
}

pub fn cauchy_quantile(params: CauchyParams, u: f64) -> f64 {
    if params.scale == 0.0 {
        return params.position;
    }
    params.position + params.scale * (PI * (u - 0.5)).tan()
}

/// `n` inverse-CDF draws.
pub fn sample_cauchy(params: CauchyParams, n: usize, seed: RngSeed) -> Vec<f64> {
    let mut rng = seed.rng();
    (0..n)
        .map(|_| {
            let mut u: f64 = rng.random();
            while u == 0.0 {
                u = rng.random();
            }
            cauchy_quantile(params, u)
        })
        .collect()
}

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Linearly interpolated order statistic at level `q` of sorted data
/// (Hyndman–Fan type 7). Symmetric: `Q_q(-x) = -Q_{1-q}(x)`.
pub fn sorted_quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Sample median; midpoint of the central pair for even lengths.
pub fn median(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    Ok(sorted_quantile(&sorted(samples), 0.5))
}

/// Median and half interquartile range, exact at the analytic quartiles
/// `p ± σ` of a Cauchy law.
pub fn quantile_fit(samples: &[f64]) -> Result<CauchyParams> {
    if samples.len() < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: samples.len() });
    }
    let s = sorted(samples);
    let q1 = sorted_quantile(&s, 0.25);
    let q3 = sorted_quantile(&s, 0.75);
    Ok(CauchyParams {
        position: sorted_quantile(&s, 0.5),
        scale: (0.5 * (q3 - q1)).max(0.0),
    })
}

/// Geometric truncation ladder `2^4, 2^5, ..., 2^20`.
pub fn default_k_schedule() -> Vec<f64> {
    (4..=20).map(|e| f64::from(1u32 << e)).collect()
}

/// Mean of `clamp(x, -k, k)` for each truncation level `k`.
pub fn truncated_mean_estimator(samples: &[f64], k_schedule: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if k_schedule.windows(2).any(|w| !(w[0] < w[1])) || k_schedule.iter().any(|k| !(*k > 0.0)) {
        return Err(Error::InvalidParameter("truncation levels must be positive and increasing".into()));
    }
    let n = samples.len() as f64;
    Ok(k_schedule
        .iter()
        .map(|&k| {
            let clamped: Vec<f64> = samples.iter().map(|x| x.clamp(-k, k)).collect();
            pairwise_sum(&clamped) / n
        })
        .collect())
}

/// `N * mean(sin(x / N))`.
pub fn sine_estimator(samples: &[f64], n_scale: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if !(n_scale > 0.0) {
        return Err(Error::InvalidParameter(format!("sine estimator scale {n_scale} must be positive")));
    }
    let terms: Vec<f64> = samples.iter().map(|x| (x / n_scale).sin()).collect();
    Ok(n_scale * pairwise_sum(&terms) / samples.len() as f64)
}

/// One-sample KS distance between the empirical law of `samples` and `cdf`.
pub fn ks_statistic_with(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let s = sorted(samples);
    let n = s.len() as f64;
    Ok(s.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((((i + 1) as f64 / n) - f).abs()).max((f - i as f64 / n).abs())
    }))
}

pub fn ks_statistic(samples: &[f64], params: CauchyParams) -> Result<f64> {
    if !(params.scale > 0.0) {
        return Err(Error::InvalidParameter("KS against a Cauchy law needs scale > 0".into()));
    }
    ks_statistic_with(samples, |x| cauchy_cdf(params, x))
}

/// Two-sample KS distance `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic Kolmogorov critical constant `c(α) = sqrt(-ln(α/2) / 2)`
/// (1.358 at 5%, 1.628 at 1%).
pub fn ks_critical_constant(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

pub fn ks_critical_value(alpha: f64, n: usize) -> f64 {
    ks_critical_constant(alpha) / (n as f64).sqrt()
}

pub fn ks_two_sample_critical_value(alpha: f64, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    ks_critical_constant(alpha) * ((n + m) / (n * m)).sqrt()
}

/// Serialized summary of a fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub position: f64,
    pub scale: f64,
    pub ks: f64,
    pub n: usize,
}

impl FitReport {
    /// Quantile fit plus KS distance to the fitted law (NaN if degenerate).
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let fit = quantile_fit(samples)?;
        let ks = if fit.scale > 0.0 { ks_statistic(samples, fit)? } else { f64::NAN };
        Ok(FitReport { position: fit.position, scale: fit.scale, ks, n: samples.len() })
    }
}
