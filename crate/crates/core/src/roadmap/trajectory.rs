use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Result};
use crate::geometry::Point;

/// Piecewise-linear path `σ: [0,1] → R^d` given by timed knots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    times: Vec<f64>,
    points: Vec<Point>,
}

impl Trajectory {
    /// Knot times must increase strictly from 0 to 1.
    pub fn new(times: Vec<f64>, points: Vec<Point>) -> Result<Self> {
        if times.len() != points.len() || points.len() < 2 {
            return Err(invalid("a trajectory needs at least two knots with one time each"));
        }
        if times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return Err(invalid("trajectory times must start at 0 and end at 1"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("trajectory times must increase strictly"));
        }
        let d = points[0].dim();
        for p in &points {
            check_dim(d, p.dim())?;
        }
        Ok(Trajectory { times, points })
    }

    /// Constant-speed parameterization of a polyline (uniform in time when the
    /// polyline has zero length).
    pub fn from_polyline(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(invalid("a polyline needs at least two points"));
        }
        let mut acc = vec![0.0];
        for w in points.windows(2) {
            acc.push(acc.last().unwrap() + w[0].distance(&w[1]));
        }
        let total = *acc.last().unwrap();
        let n = points.len() - 1;
        let mut times: Vec<f64> = if total > 0.0 {
            acc.iter().map(|a| a / total).collect()
        } else {
            (0..=n).map(|i| i as f64 / n as f64).collect()
        };
        // Drop zero-length pieces, which would repeat a time.
        let mut keep_t = vec![times[0]];
        let mut keep_p = vec![points[0].clone()];
        for i in 1..=n {
            if times[i] > *keep_t.last().unwrap() {
                keep_t.push(times[i]);
                keep_p.push(points[i].clone());
            }
        }
        *keep_t.last_mut().unwrap() = 1.0;
        times = keep_t;
        if times.len() < 2 {
            return Err(invalid("degenerate polyline"));
        }
        Trajectory::new(times, keep_p)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn start(&self) -> &Point {
        &self.points[0]
    }

    pub fn end(&self) -> &Point {
        self.points.last().unwrap()
    }

    /// Euclidean length of the traced polyline.
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }

    /// Index `k` of the piece `[t_k, t_{k+1}]` containing `tau`.
    pub(crate) fn piece(&self, tau: f64) -> usize {
        let k = self.times.partition_point(|&t| t <= tau);
        k.saturating_sub(1).min(self.times.len() - 2)
    }

    pub fn at(&self, tau: f64) -> Point {
        let tau = tau.clamp(0.0, 1.0);
        let k = self.piece(tau);
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let s = ((tau - t0) / (t1 - t0)).clamp(0.0, 1.0);
        self.points[k].lerp(&self.points[k + 1], s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_length() {
        let t = Trajectory::from_polyline(vec![Point::new([0.0, 0.0]), Point::new([1.0, 0.0]), Point::new([1.0, 1.0])])
            .unwrap();
        assert_eq!(t.times(), &[0.0, 0.5, 1.0]);
        assert_eq!(t.at(0.75).coords(), &[1.0, 0.5]);
        assert_eq!(t.length(), 2.0);
        assert_eq!(t.at(1.0).coords(), &[1.0, 1.0]);
    }

    #[test]
    fn rejects_bad_times() {
        let p = vec![Point::new([0.0]), Point::new([1.0])];
        assert!(Trajectory::new(vec![0.0, 0.5], p.clone()).is_err());
        assert!(Trajectory::new(vec![0.0, 1.0], p).is_ok());
    }
}
