//! Deterministic test curves with known winding measures.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PlanarPath;
use crate::geometry::Point;

/// Counterclockwise unit square `(0,0) (1,0) (1,1) (0,1)`, closed by its chord.
pub fn unit_square() -> PlanarPath {
    PlanarPath::uniform(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
    .unwrap()
}

/// The unit square returning to its start, so the closing chord is degenerate.
pub fn unit_square_loop() -> PlanarPath {
    let mut pts = unit_square().points().to_vec();
    pts.push(Point::new(0.0, 0.0));
    PlanarPath::uniform(pts).unwrap()
}

/// Regular `n`-gon inscribed in the unit circle, traversed `loops` times
/// counterclockwise from `(1, 0)` and back.
pub fn circle(n: usize, loops: usize) -> PlanarPath {
    let total = n * loops;
    let pts = (0..=total)
        .map(|k| {
            if k % n == 0 {
                return Point::new(1.0, 0.0);
            }
            let a = 2.0 * PI * (k % n) as f64 / n as f64;
            Point::new(a.cos(), a.sin())
        })
        .collect();
    PlanarPath::uniform(pts).unwrap()
}

/// `(t, t^2)` at `n + 1` uniform times. With its chord it bounds the
/// region between `y = x^2` and `y = x`, area 1/6, winding +1.
pub fn parabola(n: usize) -> PlanarPath {
    let pts = (0..=n)
        .map(|k| {
            let t = k as f64 / n as f64;
            Point::new(t, t * t)
        })
        .collect();
    PlanarPath::uniform(pts).unwrap()
}

/// Gerono lemniscate `(sin 2πt, sin 4πt / 2)`: two congruent lobes of
/// opposite orientation (right lobe clockwise).
pub fn figure_eight(n: usize) -> PlanarPath {
    let half = |k: usize| {
        let a = 2.0 * PI * k as f64 / n as f64;
        Point::new(a.sin(), a.sin() * a.cos())
    };
    // built from the first half by the point reflection t -> 1 - t, so the
    // two lobes are exact mirror images in floating point too
    let pts = (0..=n)
        .map(|k| {
            if k == 0 || k == n || 2 * k == n {
                Point::new(0.0, 0.0)
            } else if 2 * k < n {
                half(k)
            } else {
                -half(n - k)
            }
        })
        .collect();
    PlanarPath::uniform(pts).unwrap()
}

/// Built-in curves addressable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinCurve {
    Square,
    Circle,
    DoubleLoop,
    Parabola,
    FigureEight,
}

impl BuiltinCurve {
    pub const ALL: [BuiltinCurve; 5] = [
        BuiltinCurve::Square,
        BuiltinCurve::Circle,
        BuiltinCurve::DoubleLoop,
        BuiltinCurve::Parabola,
        BuiltinCurve::FigureEight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinCurve::Square => "square",
            BuiltinCurve::Circle => "circle",
            BuiltinCurve::DoubleLoop => "double-loop",
            BuiltinCurve::Parabola => "parabola",
            BuiltinCurve::FigureEight => "figure-eight",
        }
    }

    /// The curve at its default resolution (4096 edges for smooth ones).
    pub fn path(self) -> PlanarPath {
        match self {
            BuiltinCurve::Square => unit_square_loop(),
            BuiltinCurve::Circle => circle(4096, 1),
            BuiltinCurve::DoubleLoop => circle(4096, 2),
            BuiltinCurve::Parabola => parabola(4096),
            BuiltinCurve::FigureEight => figure_eight(4096),
        }
    }

    /// Signed area enclosed by the smooth curve (with multiplicity).
    pub fn exact_area(self) -> f64 {
        match self {
            BuiltinCurve::Square => 1.0,
            BuiltinCurve::Circle => PI,
            BuiltinCurve::DoubleLoop => 2.0 * PI,
            BuiltinCurve::Parabola => 1.0 / 6.0,
            BuiltinCurve::FigureEight => 0.0,
        }
    }
}

impl FromStr for BuiltinCurve {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinCurve::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown curve `{s}`"))
    }
}
