//! Randomized worlds with a clear path known by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::{Obstacle, Point, Segment, Workspace};
use crate::roadmap::Trajectory;

/// Planar world whose straight start-goal segment keeps clearance greater
/// than `delta`, so the segment length is the clear optimum.
#[derive(Clone, Debug)]
pub struct CorridorWorld {
    pub workspace: Workspace,
    pub start: Point,
    pub goal: Point,
    pub optimum: f64,
}

/// Quadrilateral walls line both sides of a random segment at lateral offsets
/// between `1.05·delta` and `1.5·delta`.
pub fn corridor_world(seed: u64, delta: f64) -> Result<CorridorWorld> {
    if !(delta > 0.0 && delta < 0.1) {
        return Err(invalid("corridor worlds need delta in (0, 0.1)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let margin = 2.0 * delta + 0.05;
    let (s, g) = loop {
        let s = [rng.gen_range(margin..1.0 - margin), rng.gen_range(margin..1.0 - margin)];
        let g = [rng.gen_range(margin..1.0 - margin), rng.gen_range(margin..1.0 - margin)];
        if ((g[0] - s[0]).powi(2) + (g[1] - s[1]).powi(2)).sqrt() >= 0.4 {
            break (s, g);
        }
    };
    let len = ((g[0] - s[0]).powi(2) + (g[1] - s[1]).powi(2)).sqrt();
    let u = [(g[0] - s[0]) / len, (g[1] - s[1]) / len];
    let n = [-u[1], u[0]];
    let at = |t: f64, off: f64| [s[0] + t * u[0] + off * n[0], s[1] + t * u[1] + off * n[1]];
    let mut obstacles = Vec::new();
    for side in [-1.0, 1.0] {
        let mut t = -0.1;
        while t < len + 0.1 {
            let piece = rng.gen_range(0.05..0.2);
            let inner = delta * rng.gen_range(1.05..1.5);
            let outer = inner + rng.gen_range(0.03..0.12);
            let mut vs = vec![
                at(t, side * inner),
                at(t + piece, side * inner),
                at(t + piece, side * outer),
                at(t, side * outer),
            ];
            if side < 0.0 {
                vs.reverse();
            }
            obstacles.push(Obstacle::ConvexPolygon { vertices: vs.into_iter().map(Point::new).collect() });
            t += piece + rng.gen_range(0.0..0.08);
        }
    }
    let workspace = Workspace::new(2, obstacles, 0.0)?;
    let (start, goal) = (Point::new(s), Point::new(g));
    debug_assert!(workspace.segment_clearance(&Segment::new(start.clone(), goal.clone())?)? > delta);
    Ok(CorridorWorld { workspace, start, goal, optimum: len })
}

/// Planar polyline whose clearance from the obstacles exceeds `gamma`, lying
/// inside `[gamma, 1 - gamma]²`.
#[derive(Clone, Debug)]
pub struct ClearPath {
    pub workspace: Workspace,
    pub path: Trajectory,
}

/// Random polyline of 2 to 6 vertices, with disc obstacles scattered around
/// it at clearance at least `1.05·gamma`.
pub fn gamma_clear_path(seed: u64, gamma: f64, min_span: f64) -> Result<ClearPath> {
    if !(gamma > 0.0 && gamma < 0.25) {
        return Err(invalid("gamma must lie in (0, 0.25)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = gamma + 1e-3;
    let hi = 1.0 - gamma - 1e-3;
    let path = loop {
        let k = rng.gen_range(2..=6);
        let pts: Vec<Point> = (0..k).map(|_| Point::new([rng.gen_range(lo..hi), rng.gen_range(lo..hi)])).collect();
        if pts[0].distance(&pts[k - 1]) >= min_span {
            break Trajectory::from_polyline(pts)?;
        }
    };
    let mut obstacles = Vec::new();
    for _ in 0..200 {
        if obstacles.len() == 12 {
            break;
        }
        let radius = rng.gen_range(0.02..0.1);
        let disc = Obstacle::Disc { center: Point::new([rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]), radius };
        let ws = Workspace::new(2, vec![disc.clone()], 0.0)?;
        let clear = path
            .points()
            .windows(2)
            .all(|w| ws.segment_clearance(&Segment::new(w[0].clone(), w[1].clone()).unwrap()).unwrap() >= 1.05 * gamma);
        if clear {
            obstacles.push(disc);
        }
    }
    Ok(ClearPath { workspace: Workspace::new(2, obstacles, 0.0)?, path })
}
