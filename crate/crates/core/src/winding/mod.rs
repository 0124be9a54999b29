//! Integer winding numbers of chord-closed polylines.
//!
//! Winding is counted with signed crossings of the rightward horizontal ray
//! (counterclockwise loops are positive). An edge `(a, b)` crosses the ray
//! from `z` iff `(a.y > z.y) != (b.y > z.y)` and its x-intercept is strictly
//! right of `z.x`; the half-open rule counts a vertex lying on the ray once.

mod field;
mod index;

use std::f64::consts::TAU;

pub use field::{
    GRID_PADDING,
    winding_field, winding_field_with, write_field_csv, FieldOptions, FieldSidecar, GridSpec,
    WindingField,
};
pub use index::WindingIndex;

use crate::curves::PlanarPath;
use crate::error::{Error, Result};
use crate::geometry::{segment_distance, Point};

/// Point-query tolerance as a fraction of the path's bounding-box diameter.
pub const ON_CURVE_RTOL: f64 = 1e-12;

/// Intercepts this many ulps from a query abscissa are treated as ties.
pub(crate) const TIE_ULPS: f64 = 4.0;

/// Crossing of the closed edge `(a, b)` with the horizontal line at height
/// `y`: the x-intercept and `+1` for an upward edge, `-1` for a downward one.
#[inline]
pub(crate) fn row_crossing(a: Point, b: Point, y: f64) -> Option<(f64, i32)> {
    if (a.y > y) == (b.y > y) {
        return None;
    }
    let x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
    Some((x, if b.y > a.y { 1 } else { -1 }))
}

#[inline]
pub(crate) fn is_tie(u: f64, v: f64) -> bool {
    (u - v).abs() <= TIE_ULPS * f64::EPSILON * u.abs().max(v.abs())
}

/// Distance below which a query point counts as lying on `path`.
pub fn on_curve_tolerance(path: &PlanarPath) -> f64 {
    ON_CURVE_RTOL * path.bbox().diameter()
}

fn check_off_curve(path: &PlanarPath, z: Point, eps: f64) -> Result<()> {
    if path.closed_edges().any(|(a, b)| segment_distance(z, a, b) <= eps) {
        return Err(Error::PointOnCurve { x: z.x, y: z.y });
    }
    Ok(())
}

/// Winding number of the chord-closed `path` around `z`, by ray crossings.
pub fn winding_number(path: &PlanarPath, z: Point) -> Result<i32> {
    check_off_curve(path, z, on_curve_tolerance(path))?;
    let mut w = 0;
    for (a, b) in path.closed_edges() {
        if let Some((x, s)) = row_crossing(a, b, z.y) {
            if is_tie(x, z.x) {
                return Err(Error::PointOnCurve { x: z.x, y: z.y });
            }
            if x > z.x {
                w += s;
            }
        }
    }
    Ok(w)
}

/// Winding number by accumulating the signed angle swept around `z`,
/// edge by edge including the chord. Independent of [`winding_number`].
pub fn angle_winding_oracle(path: &PlanarPath, z: Point) -> Result<i32> {
    check_off_curve(path, z, on_curve_tolerance(path))?;
    let total: f64 = path
        .closed_edges()
        .map(|(a, b)| {
            let (u, v) = (a - z, b - z);
            u.cross(v).atan2(u.dot(v))
        })
        .sum();
    Ok((total / TAU).round() as i32)
}
