//! Points, segments, obstacle primitives and exact clearance queries.
//!
//! Configurations live in the unit hypercube `[0,1]^d`. Disc robots are
//! handled as points moving among obstacles inflated by the robot radius.

mod motion;
mod obstacle;
mod workspace;

pub use motion::moving_pair_min_distance;
pub(crate) use motion::moving_pair_min_distance_raw;
pub use obstacle::Obstacle;
pub use workspace::{ClearanceMode, Workspace};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Result};

/// Absolute tolerance of every strict geometric predicate. A clearance is
/// accepted only when it exceeds this value, so grazing contact is a collision.
pub const TOLERANCE: f64 = 1e-9;

/// Strict clearance test shared by all predicates.
#[inline]
pub fn is_clear(clearance: f64) -> bool {
    clearance > TOLERANCE
}

/// A configuration in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    /// Panics if `coords` is empty or contains a non-finite value.
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Self::try_new(coords).expect("invalid point")
    }

    pub fn try_new(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(invalid("point must have at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("point coordinates must be finite"));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn distance(&self, other: &Point) -> f64 {
        dist(&self.0, &other.0)
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + t * (b - a)).collect())
    }

    /// True when every coordinate lies in `[lo, hi]`.
    pub fn within_cube(&self, lo: f64, hi: f64) -> bool {
        self.0.iter().all(|&c| c >= lo && c <= hi)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = crate::Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::try_new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Straight segment between two points of equal dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// Distance from `p` to the closed segment `[a, b]`.
pub(crate) fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut ab2 = 0.0;
    let mut ap_ab = 0.0;
    for k in 0..p.len() {
        let ab = b[k] - a[k];
        ab2 += ab * ab;
        ap_ab += (p[k] - a[k]) * ab;
    }
    let t = if ab2 > 0.0 { (ap_ab / ab2).clamp(0.0, 1.0) } else { 0.0 };
    let mut s = 0.0;
    for k in 0..p.len() {
        let c = a[k] + t * (b[k] - a[k]) - p[k];
        s += c * c;
    }
    s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_rejects_bad_coordinates() {
        assert!(Point::try_new(vec![]).is_err());
        assert!(Point::try_new(vec![0.1, f64::NAN]).is_err());
        assert!(Point::try_new(vec![0.1, f64::INFINITY]).is_err());
    }

    #[test]
    fn point_serde_validates() {
        let p: Point = serde_json::from_str("[0.25, 0.5]").unwrap();
        assert_eq!(p.coords(), &[0.25, 0.5]);
        assert!(serde_json::from_str::<Point>("[]").is_err());
    }

    #[test]
    fn segment_dimension_checked() {
        assert!(Segment::new(Point::new([0.0, 0.0]), Point::new([1.0])).is_err());
    }

    #[test]
    fn point_segment_distance_cases() {
        let a = [0.0, 0.0];
        let b = [1.0, 0.0];
        assert!((point_segment_distance(&[0.5, 0.3], &a, &b) - 0.3).abs() < 1e-15);
        assert!((point_segment_distance(&[2.0, 0.0], &a, &b) - 1.0).abs() < 1e-15);
        assert!((point_segment_distance(&[0.0, 2.0], &a, &a) - 2.0).abs() < 1e-15);
    }
}
