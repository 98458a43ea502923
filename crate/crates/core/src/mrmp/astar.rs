use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::path::combine;
use super::{for_each_tensor_neighbor, CompositePath, CompositeVertex, CostMetric, MultiRobotProblem, PlannerConfig};
use crate::error::{invalid, Error, Result};
use crate::geometry::TOLERANCE;
use crate::roadmap::Roadmap;

const NONE: u32 = u32::MAX;

fn quantize(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

/// Roadmaps must belong to the robots of `problem`, in order, with matching
/// start and goal vertices.
pub(crate) fn check_roadmaps(problem: &MultiRobotProblem, roadmaps: &[Roadmap]) -> Result<()> {
    if roadmaps.len() != problem.robot_count() {
        return Err(invalid(format!("{} roadmaps for {} robots", roadmaps.len(), problem.robot_count())));
    }
    for (i, (r, spec)) in roadmaps.iter().zip(problem.robots()).enumerate() {
        if r.vertex(r.start()) != &spec.start || r.vertex(r.goal()) != &spec.goal {
            return Err(invalid(format!("roadmap {i} does not match robot {i}'s start and goal")));
        }
    }
    Ok(())
}

/// Robots placed at `v` pairwise keep their discs apart.
pub(crate) fn statically_valid(problem: &MultiRobotProblem, roadmaps: &[Roadmap], v: &[u32]) -> bool {
    let robots = problem.robots();
    (0..v.len()).all(|i| {
        (i + 1..v.len()).all(|j| {
            let d = roadmaps[i].vertex(v[i] as usize).distance(roadmaps[j].vertex(v[j] as usize));
            d > robots[i].radius + robots[j].radius + TOLERANCE
        })
    })
}

/// A* over the implicit tensor product of `roadmaps`.
///
/// With the sum metric the result is a shortest composite path; the heuristic
/// is the sum of per-robot shortest-path distances to the goal. With the max
/// metric the search orders by the larger of the per-robot costs and the result
/// is not guaranteed optimal.
pub fn plan_composite_astar(
    problem: &MultiRobotProblem,
    roadmaps: &[Roadmap],
    config: &PlannerConfig,
) -> Result<CompositePath> {
    check_roadmaps(problem, roadmaps)?;
    let n = problem.robot_count();
    let cap = config.resolved_move_cap(n)?;
    let metric = problem.metric();
    let started = Instant::now();

    let heur: Vec<Vec<f64>> = roadmaps.par_iter().map(|r| r.distances_to(r.goal())).collect();
    let start: Vec<u32> = roadmaps.iter().map(|r| r.start() as u32).collect();
    let goal: Vec<u32> = roadmaps.iter().map(|r| r.goal() as u32).collect();
    if !statically_valid(problem, roadmaps, &start) || !statically_valid(problem, roadmaps, &goal) {
        return Err(Error::InvalidProblem("robots overlap at start or goal".into()));
    }
    let h_of = |v: &[u32]| -> Vec<f64> { v.iter().enumerate().map(|(i, &x)| heur[i][x as usize]).collect() };
    let h_start = h_of(&start);
    if h_start.iter().any(|h| !h.is_finite()) {
        return Err(Error::Unreachable);
    }
    let priority = |g: &[f64], h: &[f64]| -> (i64, i64) {
        match metric {
            CostMetric::Sum => {
                let hs: f64 = h.iter().sum();
                (quantize(g.iter().sum::<f64>() + hs), quantize(hs))
            }
            CostMetric::Max => {
                let f = g.iter().zip(h).map(|(a, b)| a + b).fold(0.0, f64::max);
                (quantize(f), quantize(h.iter().copied().fold(0.0, f64::max)))
            }
        }
    };
    // Lexicographic cost used to decide whether a new route improves a node.
    let rank = |g: &[f64]| -> (f64, f64) {
        let s: f64 = g.iter().sum();
        match metric {
            CostMetric::Sum => (s, 0.0),
            CostMetric::Max => (combine(g, CostMetric::Max), s),
        }
    };

    let mut index: FxHashMap<Box<[u32]>, u32> = FxHashMap::default();
    let mut states: Vec<Box<[u32]>> = Vec::new();
    let mut g: Vec<f64> = Vec::new(); // n entries per node
    let mut parent: Vec<u32> = Vec::new();
    let mut closed: Vec<bool> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut seq: u64 = 0;

    index.insert(start.clone().into_boxed_slice(), 0);
    states.push(start.clone().into_boxed_slice());
    g.extend(std::iter::repeat(0.0).take(n));
    parent.push(NONE);
    closed.push(false);
    let (f0, h0) = priority(&g[0..n], &h_start);
    heap.push(Reverse((f0, h0, seq, 0u32)));

    let mut expansions = 0usize;
    let mut scratch: Vec<(Vec<u32>, Vec<f64>)> = Vec::new();
    while let Some(Reverse((_, _, _, node))) = heap.pop() {
        let node = node as usize;
        if closed[node] {
            continue;
        }
        closed[node] = true;
        if *states[node] == *goal {
            let mut chain = vec![node];
            while parent[*chain.last().unwrap()] != NONE {
                chain.push(parent[*chain.last().unwrap()] as usize);
            }
            chain.reverse();
            let waypoints = chain.into_iter().map(|k| CompositeVertex(states[k].to_vec())).collect();
            return Ok(CompositePath::from_waypoints(waypoints, roadmaps, metric, expansions));
        }
        expansions += 1;
        if config.max_expansions.is_some_and(|m| expansions > m) {
            return Err(Error::BudgetExhausted { expansions });
        }
        if expansions % 1024 == 0 && config.time_limit.is_some_and(|t| started.elapsed() > t) {
            return Err(Error::BudgetExhausted { expansions });
        }

        let here = CompositeVertex(states[node].to_vec());
        let base: Vec<f64> = g[node * n..(node + 1) * n].to_vec();
        scratch.clear();
        for_each_tensor_neighbor(problem, roadmaps, &here, cap, |to, steps| {
            scratch.push((to.to_vec(), base.iter().zip(steps).map(|(a, b)| a + b).collect()));
        });
        for (to, g_new) in scratch.drain(..) {
            let h = h_of(&to);
            if h.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let id = match index.get(to.as_slice()) {
                Some(&id) => {
                    let id = id as usize;
                    if closed[id] || rank(&g_new) >= rank(&g[id * n..(id + 1) * n]) {
                        continue;
                    }
                    g[id * n..(id + 1) * n].copy_from_slice(&g_new);
                    parent[id] = node as u32;
                    id
                }
                None => {
                    let id = states.len();
                    if id >= NONE as usize {
                        return Err(Error::BudgetExhausted { expansions });
                    }
                    index.insert(to.clone().into_boxed_slice(), id as u32);
                    states.push(to.into_boxed_slice());
                    g.extend_from_slice(&g_new);
                    parent.push(node as u32);
                    closed.push(false);
                    id
                }
            };
            seq += 1;
            let (f, hk) = priority(&g_new, &h);
            heap.push(Reverse((f, hk, seq, id as u32)));
        }
    }
    Err(Error::Unreachable)
}
