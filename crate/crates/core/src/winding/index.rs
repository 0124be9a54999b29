//! Spatial index for many winding queries against one fixed path.
//!
//! The bounding box is cut into square bins. For every bin row we keep the
//! sorted intercepts of the whole polygon with the row's center line, which
//! gives the winding at any point of that line by binary search. A query
//! point is joined to the center line by a vertical segment inside its own
//! bin, and only edges touching that bin can cross the segment.

use super::{is_tie, on_curve_tolerance, row_crossing, winding_number};
use crate::curves::PlanarPath;
use crate::error::{Error, Result};
use crate::geometry::{segment_distance, Point, Rect};

/// Target number of bins per edge.
const BINS_PER_EDGE: f64 = 0.5;
const MAX_BINS_PER_SIDE: usize = 4096;

struct RefLine {
    y: f64,
    xs: Vec<f64>,
    /// `suffix[k]` = signed count of intercepts `xs[k..]`.
    suffix: Vec<i32>,
}

pub struct WindingIndex<'a> {
    path: &'a PlanarPath,
    eps: f64,
    bbox: Rect,
    origin: Point,
    bin: f64,
    nbx: usize,
    nby: usize,
    lines: Vec<RefLine>,
    bin_start: Vec<usize>,
    bin_edges: Vec<u32>,
}

impl<'a> WindingIndex<'a> {
    pub fn new(path: &'a PlanarPath) -> Self {
        let eps = on_curve_tolerance(path);
        let bbox = path.bbox();
        let pad = eps * 2.0 + bbox.diameter() * 1e-9 + f64::MIN_POSITIVE;
        let ext = Rect::new(bbox.x_min - pad, bbox.y_min - pad, bbox.x_max + pad, bbox.y_max + pad);
        let ne = path.closed_edge_count();
        let side = ext.width().max(ext.height());
        let bin = (ext.area() / (ne as f64 * BINS_PER_EDGE)).sqrt().max(side / MAX_BINS_PER_SIDE as f64);
        let nbx = ((ext.width() / bin).ceil() as usize).clamp(1, MAX_BINS_PER_SIDE);
        let nby = ((ext.height() / bin).ceil() as usize).clamp(1, MAX_BINS_PER_SIDE);
        let origin = Point::new(ext.x_min, ext.y_min);

        let mut idx = WindingIndex {
            path,
            eps,
            bbox,
            origin,
            bin,
            nbx,
            nby,
            lines: Vec::new(),
            bin_start: Vec::new(),
            bin_edges: Vec::new(),
        };
        idx.build_lines();
        idx.build_bins();
        idx
    }

    fn line_y(&self, iy: usize) -> f64 {
        self.origin.y + (iy as f64 + 0.5) * self.bin
    }

    fn build_lines(&mut self) {
        let mut per_row: Vec<Vec<(f64, i32)>> = vec![Vec::new(); self.nby];
        for (a, b) in self.path.closed_edges() {
            let lo = ((a.y.min(b.y) - self.origin.y) / self.bin - 0.5).floor() - 1.0;
            let hi = ((a.y.max(b.y) - self.origin.y) / self.bin - 0.5).ceil() + 1.0;
            let lo = lo.max(0.0) as usize;
            let hi = (hi.max(0.0) as usize).min(self.nby - 1);
            for (iy, row) in per_row.iter_mut().enumerate().take(hi + 1).skip(lo) {
                if let Some(c) = row_crossing(a, b, self.origin.y + (iy as f64 + 0.5) * self.bin) {
                    row.push(c);
                }
            }
        }
        self.lines = per_row
            .into_iter()
            .enumerate()
            .map(|(iy, mut row)| {
                row.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));
                let mut suffix = vec![0i32; row.len() + 1];
                for k in (0..row.len()).rev() {
                    suffix[k] = suffix[k + 1] + row[k].1;
                }
                RefLine { y: self.line_y(iy), xs: row.into_iter().map(|c| c.0).collect(), suffix }
            })
            .collect();
    }

    /// Bins touched by edge `(a, b)` thickened by `eps`, row by row.
    fn for_each_bin(&self, a: Point, b: Point, mut f: impl FnMut(usize)) {
        let margin = self.eps + self.bin * 1e-9;
        let y_lo = a.y.min(b.y) - margin;
        let y_hi = a.y.max(b.y) + margin;
        let r0 = (((y_lo - self.origin.y) / self.bin).floor().max(0.0) as usize).min(self.nby - 1);
        let r1 = (((y_hi - self.origin.y) / self.bin).floor().max(0.0) as usize).min(self.nby - 1);
        for iy in r0..=r1 {
            let band_lo = self.origin.y + iy as f64 * self.bin - margin;
            let band_hi = band_lo + self.bin + 2.0 * margin;
            let (mut x_lo, mut x_hi) = if a.y == b.y {
                (a.x.min(b.x), a.x.max(b.x))
            } else {
                let t0 = ((band_lo - a.y) / (b.y - a.y)).clamp(0.0, 1.0);
                let t1 = ((band_hi - a.y) / (b.y - a.y)).clamp(0.0, 1.0);
                let xa = a.x + t0 * (b.x - a.x);
                let xb = a.x + t1 * (b.x - a.x);
                (xa.min(xb), xa.max(xb))
            };
            x_lo -= margin;
            x_hi += margin;
            let c0 = (((x_lo - self.origin.x) / self.bin).floor().max(0.0) as usize).min(self.nbx - 1);
            let c1 = (((x_hi - self.origin.x) / self.bin).floor().max(0.0) as usize).min(self.nbx - 1);
            for ix in c0..=c1 {
                f(iy * self.nbx + ix);
            }
        }
    }

    fn build_bins(&mut self) {
        let nbins = self.nbx * self.nby;
        let mut count = vec![0usize; nbins];
        for (a, b) in self.path.closed_edges() {
            self.for_each_bin(a, b, |k| count[k] += 1);
        }
        let mut start = vec![0usize; nbins + 1];
        for k in 0..nbins {
            start[k + 1] = start[k] + count[k];
        }
        let mut fill = start.clone();
        let mut edges = vec![0u32; start[nbins]];
        for (i, (a, b)) in self.path.closed_edges().enumerate() {
            self.for_each_bin(a, b, |k| {
                edges[fill[k]] = i as u32;
                fill[k] += 1;
            });
        }
        self.bin_start = start;
        self.bin_edges = edges;
    }

    pub fn path(&self) -> &PlanarPath {
        self.path
    }

    pub fn bin_count(&self) -> (usize, usize) {
        (self.nbx, self.nby)
    }

    /// Same contract as [`winding_number`].
    pub fn query(&self, z: Point) -> Result<i32> {
        let b = &self.bbox;
        if z.x < b.x_min - self.eps || z.x > b.x_max + self.eps || z.y < b.y_min - self.eps || z.y > b.y_max + self.eps {
            return Ok(0);
        }
        let ix = (((z.x - self.origin.x) / self.bin).floor().max(0.0) as usize).min(self.nbx - 1);
        let iy = (((z.y - self.origin.y) / self.bin).floor().max(0.0) as usize).min(self.nby - 1);
        let k = iy * self.nbx + ix;
        let edges = &self.bin_edges[self.bin_start[k]..self.bin_start[k + 1]];

        for &e in edges {
            let (a, b) = self.path.closed_edge(e as usize);
            if segment_distance(z, a, b) <= self.eps {
                return Err(Error::PointOnCurve { x: z.x, y: z.y });
            }
        }

        let line = &self.lines[iy];
        let pos = line.xs.partition_point(|&x| x <= z.x);
        if (pos > 0 && is_tie(line.xs[pos - 1], z.x)) || (pos < line.xs.len() && is_tie(line.xs[pos], z.x)) {
            return winding_number(self.path, z);
        }
        let mut w = line.suffix[pos];

        // Walk from (z.x, line.y) to z, counting crossings with the upward
        // vertical ray convention: an edge moving leftwards above the point
        // contributes +1.
        for &e in edges {
            let (a, b) = self.path.closed_edge(e as usize);
            if (a.x > z.x) == (b.x > z.x) {
                continue;
            }
            let y = a.y + (z.x - a.x) * (b.y - a.y) / (b.x - a.x);
            if is_tie(y, line.y) || is_tie(y, z.y) {
                return winding_number(self.path, z);
            }
            let s = if a.x > z.x { 1 } else { -1 };
            w += s * (i32::from(y > z.y) - i32::from(y > line.y));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{sample_brownian, shapes};
    use crate::RngSeed;
    use rand::Rng;

    fn agree_on_random_points(path: &PlanarPath, n: usize, seed: u64) {
        let idx = WindingIndex::new(path);
        let bb = path.bbox().padded(0.1, 0.1);
        let mut rng = RngSeed(seed).rng();
        for _ in 0..n {
            let z = Point::new(rng.random_range(bb.x_min..bb.x_max), rng.random_range(bb.y_min..bb.y_max));
            match (idx.query(z), winding_number(path, z)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b, "at {z:?}"),
                (Err(_), Err(_)) => {}
                other => panic!("mismatch at {z:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn matches_naive_on_builtin_curves() {
        for c in shapes::BuiltinCurve::ALL {
            agree_on_random_points(&c.path(), 2000, 1);
        }
    }

    #[test]
    fn matches_naive_on_brownian() {
        let path = sample_brownian(1 << 12, RngSeed(77)).unwrap();
        agree_on_random_points(&path, 3000, 2);
    }

    #[test]
    fn grid_aligned_points_and_vertices() {
        let sq = shapes::unit_square();
        let idx = WindingIndex::new(&sq);
        assert_eq!(idx.query(Point::new(0.5, 0.5)).unwrap(), 1);
        assert_eq!(idx.query(Point::new(5.0, 0.5)).unwrap(), 0);
        assert!(idx.query(Point::new(1.0, 0.5)).is_err());
        assert!(idx.query(Point::new(0.0, 0.0)).is_err());
        let seg = PlanarPath::uniform(vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)]).unwrap();
        let idx = WindingIndex::new(&seg);
        assert_eq!(idx.query(Point::new(0.2, 0.7)).unwrap(), 0);
    }
}
