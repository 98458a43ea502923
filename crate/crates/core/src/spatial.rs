//! Uniform bucket grid over point sets for radius and nearest-neighbor queries.

use std::collections::HashMap;

use crate::geometry::{dist_sq, Point};

/// Hash grid with cubic cells of side `cell`.
#[derive(Clone, Debug)]
pub struct SpatialIndex {
    cell: f64,
    dim: usize,
    buckets: HashMap<Vec<i64>, Vec<u32>>,
    coords: Vec<f64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl SpatialIndex {
    /// Panics if `cell` is not positive or the points differ in dimension.
    pub fn new(points: &[Point], cell: f64) -> Self {
        assert!(cell > 0.0 && cell.is_finite(), "cell size must be positive");
        let dim = points.first().map_or(1, Point::dim);
        let mut buckets: HashMap<Vec<i64>, Vec<u32>> = HashMap::new();
        let mut coords = Vec::with_capacity(points.len() * dim);
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for (i, p) in points.iter().enumerate() {
            assert_eq!(p.dim(), dim, "mixed dimensions in spatial index");
            coords.extend_from_slice(p.coords());
            let key = key_of(p.coords(), cell);
            for k in 0..dim {
                lo[k] = lo[k].min(key[k]);
                hi[k] = hi[k].max(key[k]);
            }
            buckets.entry(key).or_default().push(i as u32);
        }
        SpatialIndex { cell, dim, buckets, coords, lo, hi }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Indices of all points within distance `radius` (inclusive, plus
    /// `slack`) of `q`, in ascending index order.
    pub fn within(&self, q: &[f64], radius: f64, slack: f64) -> Vec<usize> {
        let reach = ((radius + slack) / self.cell).ceil() as i64;
        let center = key_of(q, self.cell);
        let limit = (radius + slack) * (radius + slack);
        let mut out = Vec::new();
        self.for_each_cell(&center, reach, false, |bucket| {
            for &i in bucket {
                if dist_sq(self.point(i as usize), q) <= limit {
                    out.push(i as usize);
                }
            }
        });
        out.sort_unstable();
        out
    }

    /// Nearest point to `q`; ties go to the lexicographically smallest point.
    pub fn nearest(&self, q: &[f64]) -> Option<(usize, f64)> {
        if self.is_empty() {
            return None;
        }
        let center = key_of(q, self.cell);
        let mut best: Option<(usize, f64)> = None;
        let max_ring = (0..self.dim)
            .map(|k| (center[k] - self.lo[k]).abs().max((self.hi[k] - center[k]).abs()))
            .max()
            .unwrap_or(0);
        for ring in 0..=max_ring {
            if let Some((_, d2)) = best {
                // Points in rings beyond `ring - 1` are at least (ring - 1) cells away.
                let gap = (ring - 1).max(0) as f64 * self.cell;
                if gap * gap > d2 {
                    break;
                }
            }
            let cells = (2 * ring + 1).pow(self.dim as u32) as usize;
            if cells > 4 * self.len() + 64 {
                return Some(self.nearest_linear(q));
            }
            self.for_each_cell(&center, ring, true, |bucket| {
                for &i in bucket {
                    let i = i as usize;
                    let d2 = dist_sq(self.point(i), q);
                    if better(d2, i, best, |a, b| self.lex_less(a, b)) {
                        best = Some((i, d2));
                    }
                }
            });
        }
        best.map(|(i, d2)| (i, d2.sqrt()))
    }

    fn nearest_linear(&self, q: &[f64]) -> (usize, f64) {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.len() {
            let d2 = dist_sq(self.point(i), q);
            if better(d2, i, best, |a, b| self.lex_less(a, b)) {
                best = Some((i, d2));
            }
        }
        let (i, d2) = best.expect("non-empty index");
        (i, d2.sqrt())
    }

    fn lex_less(&self, a: usize, b: usize) -> bool {
        self.point(a).iter().zip(self.point(b)).find(|(x, y)| x != y).is_some_and(|(x, y)| x < y)
    }

    /// Visit the buckets of all cells at Chebyshev offset `<= reach` from
    /// `center` (or exactly `reach` when `shell_only`).
    fn for_each_cell(&self, center: &[i64], reach: i64, shell_only: bool, mut f: impl FnMut(&[u32])) {
        let d = self.dim;
        let mut offset = vec![-reach; d];
        let mut key = vec![0i64; d];
        loop {
            let on_shell = offset.iter().any(|o| o.abs() == reach);
            if !shell_only || on_shell {
                for k in 0..d {
                    key[k] = center[k] + offset[k];
                }
                if let Some(bucket) = self.buckets.get(&key) {
                    f(bucket);
                }
            }
            // Odometer increment over the offset cube.
            let mut k = 0;
            loop {
                if k == d {
                    return;
                }
                if offset[k] < reach {
                    offset[k] += 1;
                    break;
                }
                offset[k] = -reach;
                k += 1;
            }
        }
    }
}

fn better(d2: f64, i: usize, best: Option<(usize, f64)>, lex_less: impl Fn(usize, usize) -> bool) -> bool {
    match best {
        None => true,
        Some((j, b2)) => d2 < b2 || (d2 == b2 && lex_less(i, j)),
    }
}

fn key_of(p: &[f64], cell: f64) -> Vec<i64> {
    p.iter().map(|c| (c / cell).floor() as i64).collect()
}
