use rand::Rng;
use rand_distr::StandardNormal;

use super::{uniform_times, PlanarPath};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::seed::RngSeed;

/// Planar Brownian motion on `[0, 1]` sampled at `steps + 1` uniform times,
/// started at the origin.
pub fn sample_brownian(steps: usize, seed: RngSeed) -> Result<PlanarPath> {
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be >= 1".into()));
    }
    let sd = (1.0 / steps as f64).sqrt();
    let mut rng = seed.rng();
    let mut points = Vec::with_capacity(steps + 1);
    let mut cur = Point::default();
    points.push(cur);
    for _ in 0..steps {
        let dx: f64 = rng.sample(StandardNormal);
        let dy: f64 = rng.sample(StandardNormal);
        cur = cur + Point::new(dx, dy) * sd;
        points.push(cur);
    }
    PlanarPath::new(uniform_times(steps), points)
}

/// Inserts a Brownian-bridge midpoint in every edge of a uniformly sampled
/// path, doubling its resolution. Existing vertices are kept bit for bit.
pub fn bridge_refine(path: &PlanarPath, seed: RngSeed) -> Result<PlanarPath> {
    bridge_refine_scaled(path, seed, 1.0)
}

/// [`bridge_refine`] with the bridge noise multiplied by `noise_scale`
/// (`0.0` gives plain linear midpoints).
pub fn bridge_refine_scaled(path: &PlanarPath, seed: RngSeed, noise_scale: f64) -> Result<PlanarPath> {
    if !path.is_uniform() {
        let h = 1.0 / (path.len() - 1) as f64;
        let edge = path
            .times()
            .windows(2)
            .position(|w| ((w[1] - w[0]) - h).abs() > super::UNIFORM_RTOL * h)
            .unwrap_or(0);
        return Err(Error::NonUniformPath { edge });
    }
    let n = path.len() - 1;
    let sd = (0.25 / n as f64).sqrt() * noise_scale;
    let src = path.points();
    let mut points = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        let (a, b) = (src[i], src[i + 1]);
        // Each edge owns its own stream, so the noise does not depend on
        // which other edges are refined or in what order.
        let mut rng = seed.derive("bridge", i as u64).rng();
        let nx: f64 = rng.sample(StandardNormal);
        let ny: f64 = rng.sample(StandardNormal);
        points.push(a);
        points.push((a + b) * 0.5 + Point::new(nx, ny) * sd);
    }
    points.push(src[n]);
    PlanarPath::new(uniform_times(2 * n), points)
}
