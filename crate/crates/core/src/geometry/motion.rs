use super::Point;
use crate::error::{check_dim, Result};

/// Minimum distance between two points moving linearly and synchronously,
/// `p(τ) = p0 + τ(p1 − p0)` and `q(τ) = q0 + τ(q1 − q0)` for `τ ∈ [0,1]`.
///
/// Two disc robots traversing these motions are collision free iff the result
/// exceeds the sum of their radii.
pub fn moving_pair_min_distance(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> Result<f64> {
    let d = p0.dim();
    check_dim(d, p1.dim())?;
    check_dim(d, q0.dim())?;
    check_dim(d, q1.dim())?;
    Ok(moving_pair_min_distance_raw(p0.coords(), p1.coords(), q0.coords(), q1.coords()))
}

pub(crate) fn moving_pair_min_distance_raw(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64]) -> f64 {
    let mut vv = 0.0;
    let mut dv = 0.0;
    for k in 0..p0.len() {
        let d0 = p0[k] - q0[k];
        let v = (p1[k] - p0[k]) - (q1[k] - q0[k]);
        vv += v * v;
        dv += d0 * v;
    }
    let t = if vv > 0.0 { (-dv / vv).clamp(0.0, 1.0) } else { 0.0 };
    let mut s = 0.0;
    for k in 0..p0.len() {
        let x = (p0[k] - q0[k]) + t * ((p1[k] - p0[k]) - (q1[k] - q0[k]));
        s += x * x;
    }
    s.sqrt()
}
