use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CompositePath, MultiRobotProblem};
use crate::error::{invalid, Result};
use crate::geometry::{dist, Obstacle};

/// Deepest penetrations found by dense replay of a composite path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub obstacle_penetration: f64,
    pub robot_penetration: f64,
    pub samples: usize,
    /// Both penetrations are at most `1e-6`.
    pub ok: bool,
}

/// Replays `path` at `steps_per_edge + 1` evenly spaced instants per composite
/// edge, measuring disc-obstacle and disc-disc overlap independently of the
/// planner's closed-form checks.
pub fn validate_dense(
    problem: &MultiRobotProblem,
    path: &CompositePath,
    steps_per_edge: usize,
) -> Result<ValidationReport> {
    let n = problem.robot_count();
    if path.trajectories.len() != n {
        return Err(invalid("path and problem disagree on the robot count"));
    }
    if steps_per_edge == 0 {
        return Err(invalid("need at least one step per edge"));
    }
    let robots = problem.robots();
    let ws = problem.workspace();
    let steps = path.trajectories[0].len();
    let (last, edges) = if steps <= 1 { (0, 1) } else { (steps_per_edge, steps - 1) };
    // Each composite edge is replayed independently; results are maxima, so the
    // reduction order does not matter.
    let boxes: Vec<(Vec<f64>, Vec<f64>)> = ws.obstacles().iter().map(|o| o.bounding_box()).collect();
    let (obstacle_penetration, robot_penetration, samples) = (0..edges)
        .into_par_iter()
        .map(|e| {
            // Only obstacles whose bounding box comes within a radius of the
            // swept segment can overlap the disc; the rest contribute no
            // penetration.
            let near: Vec<Vec<&Obstacle>> = (0..n)
                .map(|i| {
                    let tr = &path.trajectories[i];
                    let (a, b) = if steps <= 1 { (&tr[0], &tr[0]) } else { (&tr[e], &tr[e + 1]) };
                    let r = robots[i].radius + 1e-6;
                    ws.obstacles()
                        .iter()
                        .zip(&boxes)
                        .filter(|(_, (lo, hi))| {
                            (0..a.dim()).all(|k| a[k].min(b[k]) - r <= hi[k] && a[k].max(b[k]) + r >= lo[k])
                        })
                        .map(|(o, _)| o)
                        .collect()
                })
                .collect();
            let mut obstacle: f64 = 0.0;
            let mut robot: f64 = 0.0;
            let mut pos: Vec<Vec<f64>> = vec![Vec::new(); n];
            for s in 0..=last {
                let t = s as f64 / steps_per_edge as f64;
                for i in 0..n {
                    let tr = &path.trajectories[i];
                    pos[i] =
                        if steps <= 1 { tr[0].coords().to_vec() } else { tr[e].lerp(&tr[e + 1], t).coords().to_vec() };
                }
                for i in 0..n {
                    for o in &near[i] {
                        obstacle = obstacle.max(robots[i].radius - o.signed_distance(&pos[i]));
                    }
                    for j in i + 1..n {
                        let gap = dist(&pos[i], &pos[j]) - robots[i].radius - robots[j].radius;
                        robot = robot.max(-gap);
                    }
                }
            }
            (obstacle, robot, last + 1)
        })
        .reduce(|| (0.0, 0.0, 0), |a, b| (a.0.max(b.0), a.1.max(b.1), a.2 + b.2));
    Ok(ValidationReport {
        obstacle_penetration,
        robot_penetration,
        samples,
        ok: obstacle_penetration <= 1e-6 && robot_penetration <= 1e-6,
    })
}
