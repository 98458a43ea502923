use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GridParams, SampleSet};
use crate::error::{check_dim, invalid, Result};
use crate::geometry::{Point, TOLERANCE};
use crate::spatial::SpatialIndex;

/// Outcome of a Monte-Carlo cover check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    /// Largest nearest-sample distance seen over all probes.
    pub max_gap: f64,
    /// Probe attaining `max_gap`.
    pub worst: Point,
    pub probes: usize,
    pub ok: bool,
}

/// Checks that every point of `[γ,1−γ]^d` is within β of a sample, probing
/// the `2^d` corners of the region plus `trials` seeded uniform points.
pub fn verify_beta_cover(s: &SampleSet, g: &GridParams, trials: usize, seed: u64) -> Result<CoverReport> {
    g.validate()?;
    if s.is_empty() {
        return Err(invalid("cannot verify the cover of an empty sample set"));
    }
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    check_dim(g.dim, s.dim().unwrap_or(g.dim))?;
    let d = g.dim;
    let index = SpatialIndex::new(&s.points, g.beta);
    let (lo, hi) = (g.gamma, 1.0 - g.gamma);

    let mut max_gap = f64::NEG_INFINITY;
    let mut worst = vec![lo; d];
    let mut probe = |p: &[f64]| {
        let (_, gap) = index.nearest(p).expect("index is non-empty");
        if gap > max_gap {
            max_gap = gap;
            worst.copy_from_slice(p);
        }
    };

    let corners = if d <= 16 { 1usize << d } else { 0 };
    for mask in 0..corners {
        let c: Vec<f64> = (0..d).map(|k| if mask >> k & 1 == 1 { hi } else { lo }).collect();
        probe(&c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = Uniform::new_inclusive(lo, hi);
    let mut p = vec![0.0; d];
    for _ in 0..trials {
        for x in p.iter_mut() {
            *x = coord.sample(&mut rng);
        }
        probe(&p);
    }
    Ok(CoverReport { max_gap, worst: Point::new(worst), probes: corners + trials, ok: max_gap <= g.beta + TOLERANCE })
}
