use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Provenance, SampleSet};
use crate::error::{invalid, Result};
use crate::geometry::Point;

/// Refuse to materialize grids larger than this.
pub const MAX_GRID_POINTS: u128 = 50_000_000;

/// Staggered grid parameters: cover radius β, margin γ and dimension d.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub beta: f64,
    pub gamma: f64,
    pub dim: usize,
}

impl GridParams {
    pub fn new(beta: f64, gamma: f64, dim: usize) -> Result<Self> {
        let g = GridParams { beta, gamma, dim };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(invalid(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.gamma >= 0.0 && self.gamma < 0.5) {
            return Err(invalid(format!("gamma must lie in [0, 0.5), got {}", self.gamma)));
        }
        if self.dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        Ok(())
    }

    /// Half the lattice spacing, `w = β√2/√d`.
    pub fn cell_halfwidth(&self) -> f64 {
        self.beta * std::f64::consts::SQRT_2 / (self.dim as f64).sqrt()
    }

    /// Number of first-layer coordinates per axis, `M = ceil((1−2γ)/(2w))`.
    /// Exact ceiling, unlike the ε = ∞ table counts of `size_curr`, which take
    /// the limit from above and can be one layer larger.
    pub fn axis_count(&self) -> u64 {
        ceil_count((1.0 - 2.0 * self.gamma) / (2.0 * self.cell_halfwidth()), false)
    }

    /// `M^d + (M+1)^d`, or `None` on overflow.
    pub fn point_count(&self) -> Option<u128> {
        layered_count(self.axis_count(), self.dim)
    }
}

/// Ceiling that treats values within 1e-9 (relative) of an integer `n` as
/// exactly `n`. With `from_above`, such values resolve to `n + 1`: this is the
/// limit of the ceiling when the argument decreases towards `n`.
pub(crate) fn ceil_count(x: f64, from_above: bool) -> u64 {
    let n = x.round();
    if (x - n).abs() <= 1e-9 * n.abs().max(1.0) {
        let n = n.max(0.0) as u64;
        if from_above {
            n + 1
        } else {
            n.max(1)
        }
    } else {
        x.ceil().max(1.0) as u64
    }
}

pub(crate) fn layered_count(m: u64, dim: usize) -> Option<u128> {
    let d = u32::try_from(dim).ok()?;
    let a = (m as u128).checked_pow(d)?;
    let b = (m as u128 + 1).checked_pow(d)?;
    a.checked_add(b)
}

/// The staggered grid: an odd-offset lattice `γ+(2k−1)w`, `k = 1..M`, followed
/// by an even lattice `γ+2kw`, `k = 0..M`, each in lexicographic order.
pub fn staggered_grid(g: &GridParams) -> Result<SampleSet> {
    g.validate()?;
    let count = g.point_count().unwrap_or(u128::MAX);
    if count > MAX_GRID_POINTS {
        return Err(invalid(format!("grid would have {count} points (limit {MAX_GRID_POINTS})")));
    }
    let m = g.axis_count() as usize;
    let w = g.cell_halfwidth();
    let odd: Vec<f64> = (1..=m).map(|k| g.gamma + (2 * k - 1) as f64 * w).collect();
    let even: Vec<f64> = (0..=m).map(|k| g.gamma + (2 * k) as f64 * w).collect();
    let mut points = Vec::with_capacity(count as usize);
    for axis in [&odd, &even] {
        lattice(axis, g.dim, &mut points);
    }
    Ok(SampleSet { points, provenance: Provenance::Staggered })
}

fn lattice(axis: &[f64], dim: usize, out: &mut Vec<Point>) {
    let n = axis.len();
    let mut idx = vec![0usize; dim];
    loop {
        out.push(Point::new(idx.iter().map(|&i| axis[i]).collect::<Vec<_>>()));
        let mut k = dim;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `n` i.i.d. uniform points in `[γ, 1−γ]^d` from a seeded ChaCha stream.
pub fn random_samples(n: usize, gamma: f64, dim: usize, seed: u64) -> Result<SampleSet> {
    if !(gamma >= 0.0 && gamma < 0.5) {
        return Err(invalid(format!("gamma must lie in [0, 0.5), got {gamma}")));
    }
    if dim == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = Uniform::new_inclusive(gamma, 1.0 - gamma);
    let points = (0..n).map(|_| Point::new((0..dim).map(|_| coord.sample(&mut rng)).collect::<Vec<_>>())).collect();
    Ok(SampleSet { points, provenance: Provenance::Random { seed } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_beta_grids() {
        let g = GridParams::new(0.25, 0.25, 2).unwrap();
        assert_eq!(staggered_grid(&g).unwrap().len(), 5);
        let g = GridParams::new(0.25 / 2f64.sqrt(), 0.25, 2).unwrap();
        assert_eq!(staggered_grid(&g).unwrap().len(), 13);
        let g = GridParams::new(0.1 / 2f64.sqrt(), 0.1, 2).unwrap();
        assert_eq!(staggered_grid(&g).unwrap().len(), 85);
    }

    #[test]
    fn layers_and_order() {
        let g = GridParams::new(0.25, 0.25, 2).unwrap();
        let s = staggered_grid(&g).unwrap();
        let c: Vec<&[f64]> = s.points.iter().map(|p| p.coords()).collect();
        assert_eq!(c[0], &[0.5, 0.5]);
        assert_eq!(c[1], &[0.25, 0.25]);
        assert_eq!(c[2], &[0.25, 0.75]);
        assert_eq!(c[4], &[0.75, 0.75]);
    }

    #[test]
    fn parameter_validation() {
        assert!(GridParams::new(0.0, 0.1, 2).is_err());
        assert!(GridParams::new(0.1, 0.5, 2).is_err());
        assert!(GridParams::new(0.1, 0.1, 0).is_err());
        assert!(staggered_grid(&GridParams { beta: 1e-5, gamma: 0.0, dim: 6 }).is_err());
    }

    #[test]
    fn ceiling_rules() {
        assert_eq!(ceil_count(4.0 + 1e-13, false), 4);
        assert_eq!(ceil_count(4.0 - 1e-13, false), 4);
        assert_eq!(ceil_count(4.0, true), 5);
        assert_eq!(ceil_count(4.2, true), 5);
        assert_eq!(ceil_count(4.2, false), 5);
    }

    #[test]
    fn random_is_deterministic() {
        assert!(random_samples(0, 0.1, 2, 1).unwrap().is_empty());
        let a = random_samples(50, 0.1, 3, 9).unwrap();
        assert_eq!(a, random_samples(50, 0.1, 3, 9).unwrap());
        assert_ne!(a, random_samples(50, 0.1, 3, 10).unwrap());
        assert!(a.points.iter().all(|p| p.within_cube(0.1, 0.9)));
    }

    #[test]
    fn random_mean_is_central() {
        let s = random_samples(10_000, 0.1, 2, 3).unwrap();
        for k in 0..2 {
            let mean = s.points.iter().map(|p| p[k]).sum::<f64>() / s.len() as f64;
            assert!((mean - 0.5).abs() < 0.01, "axis {k}: {mean}");
        }
    }
}
