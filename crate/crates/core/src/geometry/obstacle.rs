use serde::{Deserialize, Serialize};

use super::{dist, point_segment_distance, Point};
use crate::error::{check_dim, invalid, Result};

/// Obstacle primitive. Polygons and discs are planar; boxes and spheres are
/// dimension generic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Obstacle {
    Disc {
        center: Point,
        radius: f64,
    },
    /// Counter-clockwise, strictly convex.
    ConvexPolygon {
        vertices: Vec<Point>,
    },
    HyperBox {
        lo: Point,
        hi: Point,
    },
    HyperSphere {
        center: Point,
        radius: f64,
    },
}

impl Obstacle {
    pub fn dim(&self) -> usize {
        match self {
            Obstacle::Disc { .. } | Obstacle::ConvexPolygon { .. } => 2,
            Obstacle::HyperBox { lo, .. } => lo.dim(),
            Obstacle::HyperSphere { center, .. } => center.dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Obstacle::Disc { center, radius } => {
                check_dim(2, center.dim())?;
                check_radius(*radius)
            }
            Obstacle::HyperSphere { radius, .. } => check_radius(*radius),
            Obstacle::HyperBox { lo, hi } => {
                check_dim(lo.dim(), hi.dim())?;
                if lo.coords().iter().zip(hi.coords()).any(|(l, h)| l >= h) {
                    return Err(invalid("box requires lo < hi in every coordinate"));
                }
                Ok(())
            }
            Obstacle::ConvexPolygon { vertices } => validate_polygon(vertices),
        }
    }

    /// Signed distance from `p`; negative inside.
    pub(crate) fn signed_distance(&self, p: &[f64]) -> f64 {
        match self {
            Obstacle::Disc { center, radius } | Obstacle::HyperSphere { center, radius } => {
                dist(p, center.coords()) - radius
            }
            Obstacle::HyperBox { lo, hi } => {
                let mut outside = 0.0;
                let mut inside = f64::NEG_INFINITY;
                for k in 0..p.len() {
                    let q = (lo[k] - p[k]).max(p[k] - hi[k]);
                    inside = inside.max(q);
                    if q > 0.0 {
                        outside += q * q;
                    }
                }
                if inside > 0.0 {
                    outside.sqrt()
                } else {
                    inside
                }
            }
            Obstacle::ConvexPolygon { vertices } => {
                let n = vertices.len();
                let mut inside = f64::NEG_INFINITY;
                for i in 0..n {
                    let (a, b) = (vertices[i].coords(), vertices[(i + 1) % n].coords());
                    inside = inside.max(edge_line_distance(a, b, p));
                }
                if inside <= 0.0 {
                    return inside;
                }
                (0..n)
                    .map(|i| point_segment_distance(p, vertices[i].coords(), vertices[(i + 1) % n].coords()))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Exact minimum of the signed distance over the segment `[a, b]`.
    pub(crate) fn segment_signed_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Obstacle::Disc { center, radius } | Obstacle::HyperSphere { center, radius } => {
                point_segment_distance(center.coords(), a, b) - radius
            }
            Obstacle::HyperBox { lo, hi } => {
                let mut lines = Vec::with_capacity(2 * a.len());
                for k in 0..a.len() {
                    let slope = b[k] - a[k];
                    lines.push((lo[k] - a[k], -slope));
                    lines.push((a[k] - hi[k], slope));
                }
                let m = min_of_max_affine(&lines);
                if m <= 0.0 {
                    m
                } else {
                    segment_box_distance(a, b, lo.coords(), hi.coords())
                }
            }
            Obstacle::ConvexPolygon { vertices } => {
                let n = vertices.len();
                let lines: Vec<(f64, f64)> = (0..n)
                    .map(|i| {
                        let (v, w) = (vertices[i].coords(), vertices[(i + 1) % n].coords());
                        let at_a = edge_line_distance(v, w, a);
                        let at_b = edge_line_distance(v, w, b);
                        (at_a, at_b - at_a)
                    })
                    .collect();
                let m = min_of_max_affine(&lines);
                if m <= 0.0 {
                    return m;
                }
                let mut best = f64::INFINITY;
                for i in 0..n {
                    let (v, w) = (vertices[i].coords(), vertices[(i + 1) % n].coords());
                    best = best
                        .min(point_segment_distance(a, v, w))
                        .min(point_segment_distance(b, v, w))
                        .min(point_segment_distance(v, a, b));
                }
                best
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Obstacle::Disc { center, radius } | Obstacle::HyperSphere { center, radius } => (
                center.coords().iter().map(|c| c - radius).collect(),
                center.coords().iter().map(|c| c + radius).collect(),
            ),
            Obstacle::HyperBox { lo, hi } => (lo.coords().to_vec(), hi.coords().to_vec()),
            Obstacle::ConvexPolygon { vertices } => {
                let mut lo = vec![f64::INFINITY; 2];
                let mut hi = vec![f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("obstacle radius must be positive and finite, got {r}")))
    }
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn validate_polygon(vertices: &[Point]) -> Result<()> {
    if vertices.len() < 3 {
        return Err(invalid("polygon needs at least 3 vertices"));
    }
    for v in vertices {
        check_dim(2, v.dim())?;
    }
    let n = vertices.len();
    let mut turning = 0.0;
    for i in 0..n {
        let (o, a, b) = (vertices[i].coords(), vertices[(i + 1) % n].coords(), vertices[(i + 2) % n].coords());
        let c = cross(o, a, b);
        if c <= 0.0 {
            return Err(invalid("polygon must be strictly convex with counter-clockwise vertices"));
        }
        let d = (a[0] - o[0]) * (b[0] - a[0]) + (a[1] - o[1]) * (b[1] - a[1]);
        let e = (a[0] - o[0]) * (b[1] - a[1]) - (a[1] - o[1]) * (b[0] - a[0]);
        turning += e.atan2(d);
    }
    if (turning - std::f64::consts::TAU).abs() > 1e-6 {
        return Err(invalid("polygon is self-intersecting"));
    }
    Ok(())
}

/// Signed distance from `p` to the supporting line of the CCW edge `a -> b`,
/// positive on the outer side.
fn edge_line_distance(a: &[f64], b: &[f64], p: &[f64]) -> f64 {
    let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
    let len = ex.hypot(ey);
    (ey * (p[0] - a[0]) - ex * (p[1] - a[1])) / len
}

/// `min_{t in [0,1]} max_i (c_i + s_i t)` for lines `(c_i, s_i)`.
///
/// The objective is convex and piecewise linear, so the minimum sits at an
/// endpoint or at a crossing of two lines.
fn min_of_max_affine(lines: &[(f64, f64)]) -> f64 {
    let eval = |t: f64| lines.iter().map(|(c, s)| c + s * t).fold(f64::NEG_INFINITY, f64::max);
    let mut best = eval(0.0).min(eval(1.0));
    for (i, (ci, si)) in lines.iter().enumerate() {
        for (cj, sj) in &lines[i + 1..] {
            let ds = si - sj;
            if ds == 0.0 {
                continue;
            }
            let t = (cj - ci) / ds;
            if t > 0.0 && t < 1.0 {
                best = best.min(eval(t));
            }
        }
    }
    best
}

/// Distance between a segment and a box it does not touch. The squared
/// distance is a convex quadratic between consecutive face crossings.
fn segment_box_distance(a: &[f64], b: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    let d = a.len();
    let sq = |t: f64| {
        let mut s = 0.0;
        for k in 0..d {
            let x = a[k] + t * (b[k] - a[k]);
            let q = (lo[k] - x).max(x - hi[k]);
            if q > 0.0 {
                s += q * q;
            }
        }
        s
    };
    let mut knots = vec![0.0, 1.0];
    for k in 0..d {
        let slope = b[k] - a[k];
        if slope != 0.0 {
            for bound in [lo[k], hi[k]] {
                let t = (bound - a[k]) / slope;
                if t > 0.0 && t < 1.0 {
                    knots.push(t);
                }
            }
        }
    }
    knots.sort_by(f64::total_cmp);
    let mut best = f64::INFINITY;
    for w in knots.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        best = best.min(sq(t0)).min(sq(t1));
        if t1 <= t0 {
            continue;
        }
        // Coefficients of the quadratic on this piece.
        let tm = 0.5 * (t0 + t1);
        let (mut qa, mut qb) = (0.0, 0.0);
        for k in 0..d {
            let slope = b[k] - a[k];
            let x = a[k] + tm * slope;
            let (c, s) = if x < lo[k] {
                (lo[k] - a[k], -slope)
            } else if x > hi[k] {
                (a[k] - hi[k], slope)
            } else {
                continue;
            };
            qa += s * s;
            qb += 2.0 * c * s;
        }
        if qa > 0.0 {
            let t = -qb / (2.0 * qa);
            if t > t0 && t < t1 {
                best = best.min(sq(t));
            }
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Obstacle {
        Obstacle::ConvexPolygon {
            vertices: vec![
                Point::new([0.4, 0.4]),
                Point::new([0.6, 0.4]),
                Point::new([0.6, 0.6]),
                Point::new([0.4, 0.6]),
            ],
        }
    }

    fn unit_box() -> Obstacle {
        Obstacle::HyperBox { lo: Point::new([0.4, 0.4]), hi: Point::new([0.6, 0.6]) }
    }

    #[test]
    fn polygon_validation() {
        assert!(square().validate().is_ok());
        let cw = Obstacle::ConvexPolygon {
            vertices: vec![Point::new([0.0, 0.0]), Point::new([0.0, 1.0]), Point::new([1.0, 0.0])],
        };
        assert!(cw.validate().is_err());
        let collinear = Obstacle::ConvexPolygon {
            vertices: vec![Point::new([0.0, 0.0]), Point::new([0.5, 0.0]), Point::new([1.0, 0.0])],
        };
        assert!(collinear.validate().is_err());
        let star: Vec<Point> = (0..5)
            .map(|k| {
                let a = std::f64::consts::TAU * (2 * k) as f64 / 5.0;
                Point::new([a.cos(), a.sin()])
            })
            .collect();
        assert!(Obstacle::ConvexPolygon { vertices: star }.validate().is_err());
    }

    #[test]
    fn polygon_and_box_agree() {
        let (poly, bx) = (square(), unit_box());
        for p in [[0.5, 0.5], [0.45, 0.52], [0.9, 0.5], [0.8, 0.9], [0.1, 0.0], [0.6, 0.6]] {
            let (a, b) = (poly.signed_distance(&p), bx.signed_distance(&p));
            assert!((a - b).abs() < 1e-12, "{p:?}: {a} vs {b}");
        }
        let segs = [
            ([0.0, 0.5], [1.0, 0.5]),
            ([0.0, 0.0], [1.0, 0.1]),
            ([0.7, 0.1], [0.9, 0.9]),
            ([0.45, 0.45], [0.46, 0.55]),
            ([0.0, 1.0], [1.0, 0.9]),
        ];
        for (a, b) in segs {
            let (x, y) = (poly.segment_signed_distance(&a, &b), bx.segment_signed_distance(&a, &b));
            assert!((x - y).abs() < 1e-12, "{a:?}-{b:?}: {x} vs {y}");
        }
    }

    #[test]
    fn segment_through_box_reaches_center_depth() {
        let d = unit_box().segment_signed_distance(&[0.0, 0.5], &[1.0, 0.5]);
        assert!((d + 0.1).abs() < 1e-12);
        let d = unit_box().segment_signed_distance(&[0.0, 0.0], &[1.0, 1.0]);
        assert!((d + 0.1).abs() < 1e-12);
    }

    #[test]
    fn segment_box_outside_corner() {
        // Passes the (0.6, 0.6) corner diagonally at distance 0.1.
        let off = 0.1 * std::f64::consts::SQRT_2;
        let a = [1.2 + off, 0.0];
        let b = [0.2 + off, 1.0];
        let d = unit_box().segment_signed_distance(&a, &b);
        assert!((d - 0.1).abs() < 1e-12, "{d}");
    }

    #[test]
    fn box_in_three_dimensions() {
        let bx = Obstacle::HyperBox { lo: Point::new([0.2, 0.2, 0.2]), hi: Point::new([0.4, 0.4, 0.4]) };
        assert!((bx.signed_distance(&[0.5, 0.5, 0.5]) - (3.0f64 * 0.01).sqrt()).abs() < 1e-12);
        let d = bx.segment_signed_distance(&[0.6, 0.0, 0.3], &[0.6, 1.0, 0.3]);
        assert!((d - 0.2).abs() < 1e-12);
    }

    #[test]
    fn min_of_max_affine_v_shape() {
        // max(0.5 - t, t - 0.5) has its minimum 0 at t = 0.5.
        assert!(min_of_max_affine(&[(0.5, -1.0), (-0.5, 1.0)]).abs() < 1e-15);
    }
}
