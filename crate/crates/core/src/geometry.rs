use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, c: f64) -> Point {
        Point::new(self.x * c, self.y * c)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Axis-aligned rectangle, closed on all sides.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Self {
        Rect { x_min, y_min, x_max, y_max }
    }

    pub fn bounding(points: &[Point]) -> Option<Rect> {
        let first = points.first()?;
        let mut r = Rect::new(first.x, first.y, first.x, first.y);
        for p in &points[1..] {
            r.x_min = r.x_min.min(p.x);
            r.y_min = r.y_min.min(p.y);
            r.x_max = r.x_max.max(p.x);
            r.y_max = r.y_max.max(p.y);
        }
        Some(r)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width().max(0.0) * self.height().max(0.0)
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    pub fn contains_rect(&self, o: &Rect) -> bool {
        o.x_min >= self.x_min && o.x_max <= self.x_max && o.y_min >= self.y_min && o.y_max <= self.y_max
    }

    /// Grows each side by `frac` of the larger side length (at least `min_pad`).
    pub fn padded(&self, frac: f64, min_pad: f64) -> Rect {
        let pad = (self.width().max(self.height()) * frac).max(min_pad);
        Rect::new(self.x_min - pad, self.y_min - pad, self.x_max + pad, self.y_max + pad)
    }
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let ap = p - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return ap.norm();
    }
    let t = (ap.dot(ab) / len2).clamp(0.0, 1.0);
    (ap - ab * t).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_distance_cases() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert_eq!(segment_distance(Point::new(1.0, 1.0), a, b), 1.0);
        assert_eq!(segment_distance(Point::new(3.0, 0.0), a, b), 1.0);
        assert_eq!(segment_distance(Point::new(-3.0, 4.0), a, b), 5.0);
        assert_eq!(segment_distance(Point::new(3.0, 4.0), a, a), 5.0);
    }

    #[test]
    fn rect_padding() {
        let r = Rect::new(0.0, 0.0, 2.0, 1.0).padded(0.05, 0.0);
        assert_eq!(r, Rect::new(-0.1, -0.1, 2.1, 1.1));
        assert!(r.contains(Point::new(2.05, 1.05)));
    }
}
