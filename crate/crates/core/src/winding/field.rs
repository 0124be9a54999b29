//! Scanline evaluation of the winding number on every cell center of a grid.
//!
//! For each grid row the x-intercepts of all edges crossing the row's center
//! line are sorted, and a single sweep assigns every cell the signed count of
//! intercepts to its right. Rows are independent and evaluated in parallel.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_tie, row_crossing};
use crate::curves::PlanarPath;
use crate::error::{Error, Result};
use crate::geometry::{segment_distance, Rect};

/// Fraction of the bounding box added on every side of default grids.
pub const GRID_PADDING: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub y_min: f64,
    pub cell: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, y_min: f64, cell: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = GridSpec { x_min, y_min, cell, nx, ny };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell > 0.0 && self.cell.is_finite()) {
            return Err(Error::InvalidGrid(format!("cell size {} must be positive", self.cell)));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidGrid("grid needs at least one cell".into()));
        }
        if !(self.x_min.is_finite() && self.y_min.is_finite()) {
            return Err(Error::InvalidGrid("non-finite origin".into()));
        }
        Ok(())
    }

    /// Square `resolution x resolution` grid of square cells centered on
    /// `rect`, whose larger side is padded by 5% on each end.
    pub fn covering(rect: &Rect, resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidGrid("resolution must be >= 1".into()));
        }
        let mut side = rect.width().max(rect.height()) * (1.0 + 2.0 * GRID_PADDING);
        if side <= 0.0 {
            side = 1.0;
        }
        let cx = 0.5 * (rect.x_min + rect.x_max);
        let cy = 0.5 * (rect.y_min + rect.y_max);
        GridSpec::new(cx - side / 2.0, cy - side / 2.0, side / resolution as f64, resolution, resolution)
    }

    pub fn for_path(path: &PlanarPath, resolution: usize) -> Result<Self> {
        GridSpec::covering(&path.bbox(), resolution)
    }

    pub fn cell_area(&self) -> f64 {
        self.cell * self.cell
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn center_x(&self, ix: usize) -> f64 {
        self.x_min + (ix as f64 + 0.5) * self.cell
    }

    pub fn center_y(&self, iy: usize) -> f64 {
        self.y_min + (iy as f64 + 0.5) * self.cell
    }

    pub fn extent(&self) -> Rect {
        Rect::new(
            self.x_min,
            self.y_min,
            self.x_min + self.nx as f64 * self.cell,
            self.y_min + self.ny as f64 * self.cell,
        )
    }

    /// Index range of cells whose center coordinate may lie in `[lo, hi]`
    /// along an axis starting at `origin` with `n` cells. Widened by one cell
    /// on each side; callers apply the exact predicate.
    fn candidate_range(&self, origin: f64, n: usize, lo: f64, hi: f64) -> Option<(usize, usize)> {
        let a = ((lo - origin) / self.cell - 0.5).floor() - 1.0;
        let b = ((hi - origin) / self.cell - 0.5).ceil() + 1.0;
        if b < 0.0 || a > (n - 1) as f64 || a.is_nan() || b.is_nan() {
            return None;
        }
        Some((a.max(0.0) as usize, (b.min((n - 1) as f64)) as usize))
    }
}

/// Knobs of [`winding_field_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldOptions {
    /// Cells whose center lies within `mask_radius_cells * cell` of an edge
    /// are masked.
    pub mask_radius_cells: f64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { mask_radius_cells: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindingField {
    grid: GridSpec,
    values: Vec<i32>,
    mask: Vec<bool>,
}

impl WindingField {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Row-major values, `iy * nx + ix`.
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn get(&self, ix: usize, iy: usize) -> Option<i32> {
        let k = iy * self.grid.nx + ix;
        (!self.mask[k]).then_some(self.values[k])
    }

    pub fn is_masked(&self, ix: usize, iy: usize) -> bool {
        self.mask[iy * self.grid.nx + ix]
    }

    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn masked_area(&self) -> f64 {
        self.masked_count() as f64 * self.grid.cell_area()
    }

    pub fn masked_fraction(&self) -> f64 {
        self.masked_count() as f64 / self.grid.cell_count() as f64
    }

    /// Unmasked cells as `(ix, iy, value)`.
    pub fn unmasked(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        let nx = self.grid.nx;
        self.values
            .iter()
            .zip(&self.mask)
            .enumerate()
            .filter(|(_, (_, &m))| !m)
            .map(move |(k, (&v, _))| (k % nx, k / nx, v))
    }

    /// Largest `|value|` over unmasked cells.
    pub fn max_abs(&self) -> i32 {
        self.unmasked().map(|(_, _, v)| v.abs()).max().unwrap_or(0)
    }

    /// `cell_area * Σ value` over unmasked cells.
    pub fn integral(&self) -> f64 {
        let total: i64 = self.unmasked().map(|(_, _, v)| i64::from(v)).sum();
        total as f64 * self.grid.cell_area()
    }
}

pub fn winding_field(path: &PlanarPath, grid: GridSpec) -> Result<WindingField> {
    winding_field_with(path, grid, FieldOptions::default())
}

pub fn winding_field_with(path: &PlanarPath, grid: GridSpec, opts: FieldOptions) -> Result<WindingField> {
    grid.validate()?;
    if !(opts.mask_radius_cells >= 0.0) {
        return Err(Error::InvalidParameter("mask radius must be >= 0".into()));
    }
    let radius = opts.mask_radius_cells * grid.cell;
    let rows = bucket_edges_by_row(path, &grid, radius);

    let mut values = vec![0i32; grid.cell_count()];
    let mut mask = vec![false; grid.cell_count()];
    values
        .par_chunks_mut(grid.nx)
        .zip(mask.par_chunks_mut(grid.nx))
        .enumerate()
        .for_each_init(Vec::new, |xs, (iy, (vrow, mrow))| {
            let edges = &rows.edges[rows.start[iy]..rows.start[iy + 1]];
            eval_row(path, &grid, iy, edges, radius, xs, vrow, mrow);
        });
    Ok(WindingField { grid, values, mask })
}

/// Compressed per-row lists of edges that cross the row center line or pass
/// within the mask radius of it.
struct RowBuckets {
    start: Vec<usize>,
    edges: Vec<u32>,
}

fn bucket_edges_by_row(path: &PlanarPath, grid: &GridSpec, radius: f64) -> RowBuckets {
    let ne = path.closed_edge_count();
    let range = |i: usize| {
        let (a, b) = path.closed_edge(i);
        grid.candidate_range(grid.y_min, grid.ny, a.y.min(b.y) - radius, a.y.max(b.y) + radius)
    };
    let mut count = vec![0usize; grid.ny + 1];
    for i in 0..ne {
        if let Some((lo, hi)) = range(i) {
            for c in &mut count[lo..=hi] {
                *c += 1;
            }
        }
    }
    let mut start = vec![0usize; grid.ny + 1];
    for iy in 0..grid.ny {
        start[iy + 1] = start[iy] + count[iy];
    }
    let mut fill = start.clone();
    let mut edges = vec![0u32; start[grid.ny]];
    for i in 0..ne {
        if let Some((lo, hi)) = range(i) {
            for f in &mut fill[lo..=hi] {
                edges[*f] = i as u32;
                *f += 1;
            }
        }
    }
    RowBuckets { start, edges }
}

#[allow(clippy::too_many_arguments)]
fn eval_row(
    path: &PlanarPath,
    grid: &GridSpec,
    iy: usize,
    edges: &[u32],
    radius: f64,
    xs: &mut Vec<(f64, i32)>,
    vrow: &mut [i32],
    mrow: &mut [bool],
) {
    let yc = grid.center_y(iy);
    xs.clear();
    xs.extend(edges.iter().filter_map(|&e| {
        let (a, b) = path.closed_edge(e as usize);
        row_crossing(a, b, yc)
    }));
    xs.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));

    let total: i32 = xs.iter().map(|p| p.1).sum();
    let mut left = 0i32;
    let mut k = 0;
    for (ix, (v, m)) in vrow.iter_mut().zip(mrow.iter_mut()).enumerate() {
        let cx = grid.center_x(ix);
        while k < xs.len() && xs[k].0 <= cx {
            left += xs[k].1;
            k += 1;
        }
        *v = total - left;
        let tie_left = k > 0 && is_tie(xs[k - 1].0, cx);
        let tie_right = k < xs.len() && is_tie(xs[k].0, cx);
        *m = tie_left || tie_right;
    }

    for &e in edges {
        let (a, b) = path.closed_edge(e as usize);
        let Some((lo, hi)) = grid.candidate_range(grid.x_min, grid.nx, a.x.min(b.x) - radius, a.x.max(b.x) + radius) else {
            continue;
        };
        for (ix, m) in mrow.iter_mut().enumerate().take(hi + 1).skip(lo) {
            if !*m && segment_distance((grid.center_x(ix), yc).into(), a, b) <= radius {
                *m = true;
            }
        }
    }
}

/// JSON sidecar written next to a field CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSidecar {
    pub grid: GridSpec,
    pub masked_cells: usize,
    pub masked_area: f64,
}

impl From<&WindingField> for FieldSidecar {
    fn from(f: &WindingField) -> Self {
        FieldSidecar {
            grid: f.grid,
            masked_cells: f.masked_count(),
            masked_area: f.masked_area(),
        }
    }
}

/// `ix,iy,theta` for every unmasked cell.
pub fn write_field_csv<W: Write>(w: W, field: &WindingField) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["ix", "iy", "theta"])?;
    for (ix, iy, v) in field.unmasked() {
        wtr.write_record([ix.to_string(), iy.to_string(), v.to_string()])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}
