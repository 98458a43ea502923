use rayon::prelude::*;

use super::astar::{check_roadmaps, statically_valid};
use super::{CompositePath, CompositeVertex, MultiRobotProblem, PlannerConfig};
use crate::error::{invalid, Error, Result};
use crate::geometry::{moving_pair_min_distance_raw, Point, TOLERANCE};
use crate::roadmap::{GridSnapper, Roadmap, Trajectory};
use crate::sampling::{SampleSet, Stretch};

/// Merge per-robot knot times into one event list `(robot, k)` for `k ≥ 1`,
/// ordered by time and then by robot index.
pub fn ordered_timing_list(times: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let mut events: Vec<(f64, usize, usize)> = times
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().enumerate().skip(1).map(move |(k, &tau)| (tau, i, k)))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    events.into_iter().map(|(_, i, k)| (i, k)).collect()
}

/// Each robot's shortest path in its own roadmap using only edges that keep
/// clearance `δᵢ` from its inflated obstacles, ignoring the other robots.
pub fn clear_reference_paths(problem: &MultiRobotProblem, roadmaps: &[Roadmap]) -> Result<Vec<Trajectory>> {
    check_roadmaps(problem, roadmaps)?;
    (0..roadmaps.len())
        .into_par_iter()
        .map(|i| {
            let ws = problem.robot_workspace(i);
            let delta = problem.robots()[i].delta;
            let mut r = roadmaps[i].clone();
            for (a, adj) in r.adjacency.iter_mut().enumerate() {
                let pa = roadmaps[i].vertex(a).coords();
                adj.retain(|&(b, _)| {
                    ws.segment_clearance_raw(pa, roadmaps[i].vertex(b as usize).coords()) >= delta - TOLERANCE
                });
            }
            let path = r.shortest_path_between(r.start(), r.goal())?;
            let mut points = path.points;
            if points.len() == 1 {
                points.push(points[0].clone());
            }
            Trajectory::from_polyline(points)
        })
        .collect()
}

/// Constructive planner: snap each reference path onto its robot's grid with
/// step `ρᵢ = δᵢ/(ε+2)`, then advance one robot at a time in the order of
/// [`ordered_timing_list`]. Fails when a snapped step is not a roadmap edge or
/// when the moving robot would touch a stationary one.
pub fn plan_prioritized_timing(
    problem: &MultiRobotProblem,
    roadmaps: &[Roadmap],
    config: &PlannerConfig,
    references: &[Trajectory],
) -> Result<CompositePath> {
    check_roadmaps(problem, roadmaps)?;
    let eps = match config.epsilon {
        Stretch::Finite(e) => e,
        Stretch::Infinite => return Err(invalid("prioritized timing needs a finite stretch")),
    };
    if references.len() != roadmaps.len() {
        return Err(invalid("need one reference path per robot"));
    }
    let n = roadmaps.len();
    let mut times = Vec::with_capacity(n);
    let mut targets: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (i, (sigma, spec)) in references.iter().zip(problem.robots()).enumerate() {
        if sigma.start().distance(&spec.start) > 1e-9 || sigma.end().distance(&spec.goal) > 1e-9 {
            return Err(invalid(format!("reference path {i} does not join robot {i}'s start and goal")));
        }
        let r = &roadmaps[i];
        if sigma.length() == 0.0 {
            times.push(vec![0.0]);
            targets.push(vec![r.start() as u32]);
            continue;
        }
        let grid = SampleSet::explicit(r.vertices()[..r.start()].to_vec());
        let snapped = GridSnapper::new(&grid)
            .and_then(|s| Ok((s.snap(sigma, spec.delta / (eps + 2.0))?, s)))
            .map_err(|e| Error::PlanningFailed(format!("robot {i}: {e}")))?;
        let (snapped, snapper) = snapped;
        let last = snapped.points.len() - 1;
        let z = snapped
            .anchors
            .iter()
            .enumerate()
            .map(|(k, a)| match k {
                0 => r.start() as u32,
                k if k == last => r.goal() as u32,
                _ => snapper.nearest(a).0 as u32,
            })
            .collect();
        times.push(snapped.times);
        targets.push(z);
    }

    let radii: Vec<f64> = problem.robots().iter().map(|r| r.radius).collect();
    let coords = |i: usize, v: u32| -> &Point { roadmaps[i].vertex(v as usize) };
    let mut current: Vec<u32> = targets.iter().map(|z| z[0]).collect();
    if !statically_valid(problem, roadmaps, &current) {
        return Err(Error::InvalidProblem("robots overlap at start".into()));
    }
    let mut waypoints = vec![CompositeVertex(current.clone())];
    for (i, k) in ordered_timing_list(&times) {
        let (from, to) = (current[i], targets[i][k]);
        if from == to {
            continue;
        }
        if roadmaps[i].edge_length(from as usize, to as usize).is_none() {
            return Err(Error::PlanningFailed(format!("robot {i}: snapped step {k} is not a roadmap edge")));
        }
        let (p0, p1) = (coords(i, from).coords(), coords(i, to).coords());
        for j in (0..n).filter(|&j| j != i) {
            let q = coords(j, current[j]).coords();
            if moving_pair_min_distance_raw(p0, p1, q, q) <= radii[i] + radii[j] + TOLERANCE {
                return Err(Error::PlanningFailed(format!("robot {i} step {k} collides with stationary robot {j}")));
            }
        }
        current[i] = to;
        waypoints.push(CompositeVertex(current.clone()));
    }
    Ok(CompositePath::from_waypoints(waypoints, roadmaps, problem.metric(), 0))
}
