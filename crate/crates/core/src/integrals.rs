//! Line integrals on polylines, Lévy area, signed area and Young sums.

use serde::{Deserialize, Serialize};

use crate::curves::{curve_length, Dissection, PlanarPath};
use crate::error::{Error, Result};
use crate::sum::{pairwise_sum_by, symmetric_sum};
use crate::winding::WindingField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Left-point (Itô) Riemann sum.
    LeftPoint,
    /// Trapezoid rule, exact on linear edges.
    Trapezoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub scheme: Scheme,
    pub dissection_size: usize,
}

/// Exact `∫ x dy` along the polyline (closing chord excluded).
pub fn line_integral_x_dy(path: &PlanarPath) -> f64 {
    let p = path.points();
    pairwise_sum_by(p.len() - 1, &|i| 0.5 * (p[i].x + p[i + 1].x) * (p[i + 1].y - p[i].y))
}

/// Left-point sum `Σ x_i (y_{i+1} - y_i)`.
pub fn ito_sum(path: &PlanarPath) -> f64 {
    let p = path.points();
    pairwise_sum_by(p.len() - 1, &|i| p[i].x * (p[i + 1].y - p[i].y))
}

/// Right-point sum `Σ x_{i+1} (y_{i+1} - y_i)`.
pub fn right_sum(path: &PlanarPath) -> f64 {
    let p = path.points();
    pairwise_sum_by(p.len() - 1, &|i| p[i + 1].x * (p[i + 1].y - p[i].y))
}

/// `∫ x dy - (x_0 + x_n)/2 (y_n - y_0)`, the integral taken with `scheme`.
pub fn levy_area(path: &PlanarPath, scheme: Scheme) -> f64 {
    let integral = match scheme {
        Scheme::LeftPoint => ito_sum(path),
        Scheme::Trapezoid => line_integral_x_dy(path),
    };
    let (a, b) = (path.first(), path.last());
    integral - 0.5 * (a.x + b.x) * (b.y - a.y)
}

/// Signed area of the chord-closed polygon by the shoelace formula.
///
/// Coordinates are taken relative to the chord midpoint, on the chord's
/// line, so the chord itself contributes nothing and reversing the path
/// negates the result exactly.
pub fn shoelace_area(path: &PlanarPath) -> f64 {
    let p = path.points();
    let o = (path.first() + path.last()) * 0.5;
    let terms: Vec<f64> = p.windows(2).map(|w| (w[0] - o).cross(w[1] - o)).collect();
    0.5 * symmetric_sum(&terms)
}

/// Outcome of [`young_integral`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YoungIntegral {
    /// Left-point sum on the finest dissection.
    pub result: IntegralResult,
    /// One left-point sum per dissection, coarse to fine.
    pub sums: Vec<f64>,
    /// Largest successive difference among the last three sums.
    pub diagnostic: f64,
    pub converged: bool,
}

/// Left-point Riemann sums of `∫ x dy` along a refining sequence of
/// dissections of the sampled series. Non-convergence (diagnostic above
/// `tol`) is reported in the result, not raised.
pub fn young_integral(times: &[f64], x: &[f64], y: &[f64], refinement: &[Dissection], tol: f64) -> Result<YoungIntegral> {
    if times.len() != x.len() || x.len() != y.len() {
        return Err(Error::InvalidParameter("times, x and y differ in length".into()));
    }
    if refinement.is_empty() {
        return Err(Error::InvalidDissection("empty refinement sequence".into()));
    }
    if refinement.windows(2).any(|w| w[1].mesh() > w[0].mesh()) {
        return Err(Error::InvalidDissection("meshes must decrease along the refinement".into()));
    }
    let sums = refinement
        .iter()
        .map(|d| {
            let idx = d.resolve(times)?;
            Ok(pairwise_sum_by(idx.len() - 1, &|k| x[idx[k]] * (y[idx[k + 1]] - y[idx[k]])))
        })
        .collect::<Result<Vec<f64>>>()?;
    let tail = &sums[sums.len().saturating_sub(3)..];
    let diagnostic = if tail.len() < 2 {
        f64::INFINITY
    } else {
        tail.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
    };
    let finest = refinement.last().unwrap();
    Ok(YoungIntegral {
        result: IntegralResult {
            value: *sums.last().unwrap(),
            scheme: Scheme::LeftPoint,
            dissection_size: finest.len(),
        },
        converged: diagnostic <= tol,
        diagnostic,
        sums,
    })
}

/// Grid check of `∫ x dy - chord term = ∫ θ dz`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesResidual {
    pub levy_area: f64,
    pub grid_integral: f64,
    pub residual: f64,
    /// `(masked_area + length * cell) * max|θ|`.
    pub bound: f64,
    pub masked_area: f64,
    pub max_abs_winding: i32,
}

pub fn stokes_residual(path: &PlanarPath, field: &WindingField) -> StokesResidual {
    let levy = levy_area(path, Scheme::Trapezoid);
    let grid_integral = field.integral();
    // masked centers still carry a ray count; include them so the bound
    // also covers the excluded cells
    let max_abs = field.values().iter().map(|v| v.abs()).max().unwrap_or(0);
    let masked_area = field.masked_area();
    let bound = (masked_area + curve_length(path) * field.grid().cell) * f64::from(max_abs);
    StokesResidual {
        levy_area: levy,
        grid_integral,
        residual: (levy - grid_integral).abs(),
        bound,
        masked_area,
        max_abs_winding: max_abs,
    }
}
