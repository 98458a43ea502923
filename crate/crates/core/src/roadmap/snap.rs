use serde::{Deserialize, Serialize};

use super::Trajectory;
use crate::error::{check_dim, invalid, Result};
use crate::geometry::{dot, Point};
use crate::sampling::SampleSet;
use crate::spatial::SpatialIndex;

/// A path traced through grid points that shadows a continuous path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnappedPath {
    /// `τ₀ = 0 < τ₁ < … < τ_ℓ = 1`.
    pub times: Vec<f64>,
    /// `σ(τᵢ)`.
    pub anchors: Vec<Point>,
    /// `zᵢ`: the path endpoints, and the nearest grid point to each interior anchor.
    pub points: Vec<Point>,
    /// Chord step ρ.
    pub rho: f64,
}

impl SnappedPath {
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }
}

/// Times at which the chord from the previously emitted point first reaches
/// `rho`; the final chord (ending at τ = 1) may be shorter.
pub fn chord_times(sigma: &Trajectory, rho: f64) -> Result<Vec<f64>> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(invalid(format!("rho must be positive, got {rho}")));
    }
    if sigma.start().distance(sigma.end()) < rho {
        return Err(invalid("path endpoints are closer than rho"));
    }
    let times = sigma.times();
    let pts = sigma.points();
    let mut out = vec![0.0];
    let mut anchor = sigma.start().clone();
    let mut piece = 0;
    let mut s_lo = 0.0;
    loop {
        let mut found = None;
        while piece + 1 < times.len() {
            let (a, b) = (pts[piece].coords(), pts[piece + 1].coords());
            let dvec: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
            let rel: Vec<f64> = a.iter().zip(anchor.coords()).map(|(x, p)| x - p).collect();
            let qa = dot(&dvec, &dvec);
            if qa > 0.0 {
                // |rel + s·dvec|² = ρ² has its upward crossing at the larger root.
                let qb = 2.0 * dot(&dvec, &rel);
                let qc = dot(&rel, &rel) - rho * rho;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc >= 0.0 {
                    let s = (-qb + disc.sqrt()) / (2.0 * qa);
                    if s > s_lo && s <= 1.0 {
                        found = Some((piece, s));
                        break;
                    }
                }
            }
            piece += 1;
            s_lo = 0.0;
        }
        match found {
            Some((k, s)) => {
                let tau = times[k] + s * (times[k + 1] - times[k]);
                if tau >= 1.0 - 1e-12 {
                    out.push(1.0);
                    return Ok(out);
                }
                out.push(tau);
                anchor = pts[k].lerp(&pts[k + 1], s);
                piece = k;
                s_lo = s;
            }
            None => {
                out.push(1.0);
                return Ok(out);
            }
        }
    }
}

/// Nearest-grid-point lookup with lexicographic tie-breaking.
#[derive(Clone, Debug)]
pub struct GridSnapper {
    points: Vec<Point>,
    index: SpatialIndex,
}

impl GridSnapper {
    pub fn new(grid: &SampleSet) -> Result<Self> {
        if grid.is_empty() {
            return Err(invalid("cannot snap onto an empty grid"));
        }
        let d = grid.points[0].dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in &grid.points {
            check_dim(d, p.dim())?;
            for k in 0..d {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let volume: f64 = lo.iter().zip(&hi).map(|(l, h)| (h - l).max(1e-6)).product();
        let cell = (volume / grid.len() as f64).powf(1.0 / d as f64).max(1e-9);
        Ok(GridSnapper { points: grid.points.clone(), index: SpatialIndex::new(&grid.points, cell) })
    }

    /// Index and distance of the nearest grid point.
    pub fn nearest(&self, p: &Point) -> (usize, f64) {
        self.index.nearest(p.coords()).expect("grid is non-empty")
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn snap(&self, sigma: &Trajectory, rho: f64) -> Result<SnappedPath> {
        check_dim(self.points[0].dim(), sigma.dim())?;
        let times = chord_times(sigma, rho)?;
        let anchors: Vec<Point> = times.iter().map(|&t| sigma.at(t)).collect();
        let last = times.len() - 1;
        let points = anchors
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i == 0 {
                    sigma.start().clone()
                } else if i == last {
                    sigma.end().clone()
                } else {
                    self.points[self.nearest(a).0].clone()
                }
            })
            .collect();
        Ok(SnappedPath { times, anchors, points, rho })
    }
}

/// Snap `sigma` onto `grid` with chord step `rho`.
pub fn snap_path(sigma: &Trajectory, rho: f64, grid: &SampleSet) -> Result<SnappedPath> {
    GridSnapper::new(grid)?.snap(sigma, rho)
}
