use serde::{Deserialize, Serialize};

use super::CostMetric;
use crate::geometry::Point;
use crate::roadmap::Roadmap;

/// One roadmap vertex index per robot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositeVertex(pub Vec<u32>);

impl CompositeVertex {
    pub fn robots(&self) -> usize {
        self.0.len()
    }

    pub fn positions<'a>(&'a self, roadmaps: &'a [Roadmap]) -> impl Iterator<Item = &'a Point> + 'a {
        self.0.iter().zip(roadmaps).map(|(&v, r)| r.vertex(v as usize))
    }
}

/// A composite path with its per-robot polylines. Robot `i` is at
/// `trajectories[i][k]` at waypoint `k`; moving robots travel synchronously.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositePath {
    pub waypoints: Vec<CompositeVertex>,
    pub trajectories: Vec<Vec<Point>>,
    pub lengths: Vec<f64>,
    pub cost: f64,
    pub metric: CostMetric,
    /// Composite vertices expanded by the search (0 for non-search planners).
    pub expansions: usize,
}

impl CompositePath {
    pub(crate) fn from_waypoints(
        waypoints: Vec<CompositeVertex>,
        roadmaps: &[Roadmap],
        metric: CostMetric,
        expansions: usize,
    ) -> Self {
        let trajectories: Vec<Vec<Point>> = (0..roadmaps.len())
            .map(|i| waypoints.iter().map(|w| roadmaps[i].vertex(w.0[i] as usize).clone()).collect())
            .collect();
        let lengths: Vec<f64> = trajectories.iter().map(|t| polyline_length(t)).collect();
        let cost = combine(&lengths, metric);
        CompositePath { waypoints, trajectories, lengths, cost, metric, expansions }
    }

    pub fn steps(&self) -> usize {
        self.waypoints.len().saturating_sub(1)
    }
}

pub(crate) fn polyline_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

pub(crate) fn combine(lengths: &[f64], metric: CostMetric) -> f64 {
    match metric {
        CostMetric::Sum => lengths.iter().sum(),
        CostMetric::Max => lengths.iter().copied().fold(0.0, f64::max),
    }
}

/// Cost of a path under `metric`, recomputed from its trajectories.
pub fn path_cost(path: &CompositePath, metric: CostMetric) -> f64 {
    let lengths: Vec<f64> = path.trajectories.iter().map(|t| polyline_length(t)).collect();
    combine(&lengths, metric)
}
