//! Planar paths: construction, Brownian sampling, refinement and measurement.
//!
//! A [`PlanarPath`] is a time-stamped polyline on `[0, 1]`. Every consumer
//! treats it as implicitly closed by the chord from the last vertex back to
//! the first.

mod brownian;
mod io;
mod pvar;
pub mod shapes;

use serde::{Deserialize, Serialize};

pub use brownian::{bridge_refine, bridge_refine_scaled, sample_brownian};
pub use io::{read_path_csv, read_path_from, write_path_csv, write_path_to};
pub use pvar::p_variation;

use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::sum::pairwise_sum_by;

/// Relative tolerance on time steps for [`PlanarPath::is_uniform`].
const UNIFORM_RTOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPath {
    times: Vec<f64>,
    points: Vec<Point>,
}

impl PlanarPath {
    pub fn new(times: Vec<f64>, points: Vec<Point>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::InvalidPath(format!(
                "{} times but {} points",
                times.len(),
                points.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidPath("a path needs at least 2 vertices".into()));
        }
        if times[0] != 0.0 || times[times.len() - 1] != 1.0 {
            return Err(Error::InvalidPath("times must start at 0 and end at 1".into()));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidPath(format!("times not strictly increasing at index {}", i + 1)));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPath(format!("non-finite coordinate at index {i}")));
        }
        Ok(PlanarPath { times, points })
    }

    /// Path through `points` at uniformly spaced times `i / (n - 1)`.
    pub fn uniform(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(Error::InvalidPath("a path needs at least 2 vertices".into()));
        }
        PlanarPath::new(uniform_times(n - 1), points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn first(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        self.points[self.points.len() - 1]
    }

    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.y).collect()
    }

    /// Number of edges of the closed polygon, closing chord included.
    pub fn closed_edge_count(&self) -> usize {
        self.points.len()
    }

    /// Edge `i` of the closed polygon; the last one is the closing chord.
    #[inline]
    pub fn closed_edge(&self, i: usize) -> (Point, Point) {
        let n = self.points.len();
        (self.points[i], self.points[if i + 1 == n { 0 } else { i + 1 }])
    }

    pub fn closed_edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.closed_edge_count()).map(move |i| self.closed_edge(i))
    }

    pub fn bbox(&self) -> Rect {
        Rect::bounding(&self.points).expect("path has vertices")
    }

    pub fn is_uniform(&self) -> bool {
        let h = 1.0 / (self.len() - 1) as f64;
        self.times.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= UNIFORM_RTOL * h)
    }

    /// Same geometry traversed backwards, with times `1 - t`.
    pub fn reversed(&self) -> PlanarPath {
        let times = self.times.iter().rev().map(|t| 1.0 - t).collect();
        let points = self.points.iter().rev().copied().collect();
        PlanarPath { times, points }
    }

    pub fn translated(&self, v: Point) -> PlanarPath {
        PlanarPath {
            times: self.times.clone(),
            points: self.points.iter().map(|&p| p + v).collect(),
        }
    }

    pub fn scaled(&self, c: f64) -> PlanarPath {
        PlanarPath {
            times: self.times.clone(),
            points: self.points.iter().map(|&p| p * c).collect(),
        }
    }

    /// Index of the vertex at exactly time `t`.
    pub fn vertex_at(&self, t: f64) -> Option<usize> {
        let i = self.times.partition_point(|&s| s < t);
        (i < self.times.len() && self.times[i] == t).then_some(i)
    }
}

pub(crate) fn uniform_times(steps: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();
    t[steps] = 1.0;
    t
}

/// An increasing list of times `0 = t_0 < ... < t_n = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dissection {
    times: Vec<f64>,
}

impl Dissection {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times[0] != 0.0 || times[times.len() - 1] != 1.0 {
            return Err(Error::InvalidDissection("must start at 0 and end at 1".into()));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidDissection("times must be strictly increasing".into()));
        }
        Ok(Dissection { times })
    }

    /// `{k / n : k = 0..=n}`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDissection("needs at least one interval".into()));
        }
        Ok(Dissection { times: uniform_times(n) })
    }

    pub fn dyadic(level: u32) -> Result<Self> {
        if level > 40 {
            return Err(Error::InvalidDissection(format!("dyadic level {level} too fine")));
        }
        Dissection::uniform(1usize << level)
    }

    /// Dissection made of the given vertices of `path`.
    pub fn from_indices(path: &PlanarPath, indices: &[usize]) -> Result<Self> {
        let times = indices
            .iter()
            .map(|&i| {
                path.times().get(i).copied().ok_or(Error::BadRange {
                    start: i,
                    end: i,
                    len: path.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Dissection::new(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest gap between consecutive times.
    pub fn mesh(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Positions of the dissection times inside `times` (exact matches).
    pub fn resolve(&self, times: &[f64]) -> Result<Vec<usize>> {
        self.times
            .iter()
            .map(|&t| {
                let i = times.partition_point(|&s| s < t);
                if i < times.len() && times[i] == t {
                    Ok(i)
                } else {
                    Err(Error::NotAVertex(t))
                }
            })
            .collect()
    }
}

/// Sub-path between vertices `i` and `j`, times renormalized to `[0, 1]`.
pub fn restrict(path: &PlanarPath, i: usize, j: usize) -> Result<PlanarPath> {
    if i >= j || j >= path.len() {
        return Err(Error::BadRange { start: i, end: j, len: path.len() });
    }
    let (t0, t1) = (path.times[i], path.times[j]);
    let span = t1 - t0;
    let mut times: Vec<f64> = path.times[i..=j].iter().map(|t| (t - t0) / span).collect();
    times[0] = 0.0;
    *times.last_mut().unwrap() = 1.0;
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidPath("renormalized times collapsed".into()));
    }
    Ok(PlanarPath {
        times,
        points: path.points[i..=j].to_vec(),
    })
}

/// The polyline through the vertices of `path` selected by `d`.
pub fn pl_skeleton(path: &PlanarPath, d: &Dissection) -> Result<PlanarPath> {
    let idx = d.resolve(path.times())?;
    Ok(PlanarPath {
        times: d.times().to_vec(),
        points: idx.iter().map(|&i| path.points[i]).collect(),
    })
}

/// Euclidean length of the closed polygon, closing chord included.
pub fn curve_length(path: &PlanarPath) -> f64 {
    pairwise_sum_by(path.closed_edge_count(), &|i| {
        let (a, b) = path.closed_edge(i);
        (b - a).norm()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::shapes;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn rejects_invalid_paths() {
        assert!(PlanarPath::new(vec![0.0], pts(&[(0.0, 0.0)])).is_err());
        assert!(PlanarPath::new(vec![0.0, 0.5], pts(&[(0.0, 0.0), (1.0, 1.0)])).is_err());
        assert!(PlanarPath::new(vec![0.0, 0.5, 0.5, 1.0], vec![Point::default(); 4]).is_err());
        assert!(PlanarPath::new(vec![0.0, 1.0], pts(&[(0.0, f64::NAN), (1.0, 1.0)])).is_err());
        assert!(PlanarPath::new(vec![0.0, 1.0], pts(&[(0.0, 0.0)])).is_err());
    }

    #[test]
    fn restrict_identity_and_single_edge() {
        let p = shapes::parabola(8);
        let whole = restrict(&p, 0, 8).unwrap();
        assert_eq!(whole.points(), p.points());
        let e = restrict(&p, 3, 4).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.times(), &[0.0, 1.0]);
        assert_eq!(e.points(), &p.points()[3..=4]);
        assert!(matches!(restrict(&p, 4, 4), Err(Error::BadRange { .. })));
        assert!(matches!(restrict(&p, 5, 2), Err(Error::BadRange { .. })));
        assert!(matches!(restrict(&p, 0, 9), Err(Error::BadRange { .. })));
    }

    #[test]
    fn restrict_partition_reproduces_path() {
        let p = shapes::parabola(10);
        let a = restrict(&p, 0, 4).unwrap();
        let b = restrict(&p, 4, 10).unwrap();
        let mut joined = a.points().to_vec();
        joined.extend_from_slice(&b.points()[1..]);
        assert_eq!(joined, p.points());
    }

    #[test]
    fn skeleton_selection() {
        let p = shapes::parabola(8);
        let all = Dissection::new(p.times().to_vec()).unwrap();
        assert_eq!(pl_skeleton(&p, &all).unwrap(), p);

        let chord = pl_skeleton(&p, &Dissection::new(vec![0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(chord.points(), pts(&[(0.0, 0.0), (1.0, 1.0)]));

        let mid = pl_skeleton(&p, &Dissection::new(vec![0.0, 0.5, 1.0]).unwrap()).unwrap();
        assert_eq!(mid.points(), pts(&[(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]));

        let bad = Dissection::new(vec![0.0, 0.3, 1.0]).unwrap();
        assert!(matches!(pl_skeleton(&p, &bad), Err(Error::NotAVertex(t)) if t == 0.3));
    }

    #[test]
    fn dyadic_dissection_hits_brownian_vertices() {
        let p = sample_brownian(1 << 10, crate::RngSeed(1)).unwrap();
        for level in 0..=10 {
            let d = Dissection::dyadic(level).unwrap();
            assert_eq!(pl_skeleton(&p, &d).unwrap().len(), (1 << level) + 1);
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(curve_length(&shapes::unit_square_loop()), 4.0);
        let seg = PlanarPath::uniform(pts(&[(0.0, 0.0), (3.0, 4.0)])).unwrap();
        assert_eq!(curve_length(&seg), 10.0);
        let n = 4096.0;
        let expected = n * 2.0 * (std::f64::consts::PI / n).sin();
        assert!((curve_length(&shapes::circle(4096, 1)) - expected).abs() < 1e-11);
        assert!((expected - std::f64::consts::TAU).abs() < 1e-5);
    }

    #[test]
    fn reversal_and_uniformity() {
        let p = shapes::parabola(4);
        assert!(p.is_uniform());
        let r = p.reversed();
        assert_eq!(r.times(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(r.first(), p.last());
        let odd = PlanarPath::new(vec![0.0, 0.1, 1.0], vec![Point::default(); 3]).unwrap();
        assert!(!odd.is_uniform());
    }
}
