//! Multi-robot planning on the tensor product of per-robot roadmaps.
//!
//! A composite vertex places every robot on a vertex of its own roadmap. A
//! composite edge lets each robot either stay or traverse one of its roadmap
//! edges, all moving robots advancing synchronously along straight segments;
//! edges along which two discs would touch are pruned. The product graph is
//! never materialized.

mod astar;
mod path;
mod prioritized;
mod tensor;
mod validate;

pub use astar::plan_composite_astar;
pub use path::{path_cost, CompositePath, CompositeVertex};
pub use prioritized::{clear_reference_paths, ordered_timing_list, plan_prioritized_timing};
pub use tensor::{for_each_tensor_neighbor, tensor_neighbors};
pub use validate::{validate_dense, ValidationReport};

use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::{Point, Workspace, TOLERANCE};
use crate::roadmap::{build_prm, MotionProblem, Roadmap, RobotParams};
use crate::sampling::{staggered_grid, GridParams, SampleSet, Stretch};

/// One disc robot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotSpec {
    pub radius: f64,
    /// Required clearance δᵢ.
    pub delta: f64,
    pub start: Point,
    pub goal: Point,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostMetric {
    /// Sum of trajectory lengths.
    #[default]
    Sum,
    /// Longest trajectory; planned best-effort.
    Max,
}

/// Robots sharing a workspace. The stored workspace is not inflated; each
/// robot sees the obstacles inflated by its own radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiRobotProblem {
    workspace: Workspace,
    robots: Vec<RobotSpec>,
    metric: CostMetric,
}

impl MultiRobotProblem {
    /// Checks that starts and goals keep clearance `δᵢ` from inflated
    /// obstacles and `max(δᵢ, δⱼ)` from each other. Equality is accepted, since
    /// experiments set δ to exactly the static clearance.
    pub fn new(workspace: Workspace, robots: Vec<RobotSpec>, metric: CostMetric) -> Result<Self> {
        if robots.is_empty() {
            return Err(invalid("need at least one robot"));
        }
        let workspace = workspace.with_inflation(0.0)?;
        for (i, r) in robots.iter().enumerate() {
            check_dim(workspace.dim(), r.start.dim())?;
            check_dim(workspace.dim(), r.goal.dim())?;
            if !(r.radius > 0.0 && r.radius.is_finite() && r.delta > 0.0 && r.delta.is_finite()) {
                return Err(invalid(format!("robot {i}: radius and delta must be positive")));
            }
            for (name, p) in [("start", &r.start), ("goal", &r.goal)] {
                let c = workspace.clearance_raw(p.coords()) - r.radius;
                if c < r.delta - TOLERANCE {
                    return Err(Error::InvalidProblem(format!(
                        "robot {i} {name} has clearance {c} < delta {}",
                        r.delta
                    )));
                }
            }
        }
        for i in 0..robots.len() {
            for j in i + 1..robots.len() {
                let (a, b) = (&robots[i], &robots[j]);
                let need = a.radius + b.radius + a.delta.max(b.delta);
                for (name, p, q) in [("starts", &a.start, &b.start), ("goals", &a.goal, &b.goal)] {
                    if p.distance(q) < need - TOLERANCE {
                        return Err(Error::InvalidProblem(format!(
                            "robots {i} and {j}: {name} are {} apart, need {need}",
                            p.distance(q)
                        )));
                    }
                }
            }
        }
        Ok(MultiRobotProblem { workspace, robots, metric })
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    pub fn robots(&self) -> &[RobotSpec] {
        &self.robots
    }

    pub fn robot_count(&self) -> usize {
        self.robots.len()
    }

    pub fn metric(&self) -> CostMetric {
        self.metric
    }

    pub fn with_metric(mut self, metric: CostMetric) -> Self {
        self.metric = metric;
        self
    }

    /// The workspace seen by robot `i`: obstacles inflated by its radius.
    pub fn robot_workspace(&self, i: usize) -> Workspace {
        self.workspace.with_inflation(self.robots[i].radius).expect("radius is valid")
    }

    /// Single-robot problem of robot `i`, ignoring the other robots.
    pub fn robot_problem(&self, i: usize) -> Result<MotionProblem> {
        let r = &self.robots[i];
        MotionProblem::new(self.robot_workspace(i), r.start.clone(), r.goal.clone())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlannerMode {
    #[default]
    CompositeAstar,
    PrioritizedTiming,
}

/// Queue order of composite A*: smallest f, then smallest h, then earliest
/// insertion. It is the only rule implemented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    FThenHThenInsertion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    pub epsilon: Stretch,
    /// Most robots moving along one composite edge; `None` picks R for R ≤ 3
    /// and 1 otherwise.
    pub move_cap: Option<usize>,
    pub mode: PlannerMode,
    pub tie_break: TieBreak,
    pub max_expansions: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl PlannerConfig {
    pub fn new(epsilon: Stretch) -> Self {
        PlannerConfig {
            epsilon,
            move_cap: None,
            mode: PlannerMode::CompositeAstar,
            tie_break: TieBreak::FThenHThenInsertion,
            max_expansions: None,
            time_limit: None,
        }
    }

    pub fn with_move_cap(mut self, k: usize) -> Self {
        self.move_cap = Some(k);
        self
    }

    pub fn with_mode(mut self, mode: PlannerMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_max_expansions(mut self, n: usize) -> Self {
        self.max_expansions = Some(n);
        self
    }

    /// Effective move cap for `robots` robots.
    pub fn resolved_move_cap(&self, robots: usize) -> Result<usize> {
        match self.move_cap {
            None => Ok(if robots <= 3 { robots } else { 1 }),
            Some(k) if k >= 1 && k <= robots => Ok(k),
            Some(k) => Err(invalid(format!("move cap {k} must lie in 1..={robots}"))),
        }
    }
}

/// Multi-robot recipe: `ω = ε/(2(ε+2))`, per robot `β = ωδᵢ`, `γ = δᵢ`,
/// `r = δᵢ(ε+1)/(ε+2)` and snapping step `ρ = δᵢ/(ε+2)`.
pub fn theorem2_params(epsilon: Stretch, deltas: &[f64], dim: usize) -> Result<Vec<RobotParams>> {
    deltas
        .iter()
        .map(|&delta| {
            if !(delta > 0.0 && delta < 0.5) {
                return Err(invalid(format!("delta must lie in (0, 0.5), got {delta}")));
            }
            let grid = GridParams::new(epsilon.omega() * delta, delta, dim)?;
            let (radius, rho) = match epsilon {
                Stretch::Finite(e) => (delta * (e + 1.0) / (e + 2.0), delta / (e + 2.0)),
                Stretch::Infinite => (delta, 0.0),
            };
            Ok(RobotParams { grid, radius, rho })
        })
        .collect()
}

/// Per-robot staggered-grid roadmaps; robots with identical grids share one
/// sample set.
pub fn build_roadmaps(problem: &MultiRobotProblem, params: &[RobotParams]) -> Result<Vec<Roadmap>> {
    if params.len() != problem.robot_count() {
        return Err(invalid("need one parameter set per robot"));
    }
    let mut grids: Vec<(GridParams, SampleSet)> = Vec::new();
    for p in params {
        if !grids.iter().any(|(g, _)| g == &p.grid) {
            grids.push((p.grid, staggered_grid(&p.grid)?));
        }
    }
    (0..params.len())
        .into_par_iter()
        .map(|i| {
            let samples = &grids.iter().find(|(g, _)| g == &params[i].grid).unwrap().1;
            Ok(build_prm(&problem.robot_problem(i)?, samples, params[i].radius)?.with_grid(params[i].grid))
        })
        .collect()
}

/// Per-robot roadmaps over explicit sample sets.
pub fn build_roadmaps_from_samples(
    problem: &MultiRobotProblem,
    samples: &[SampleSet],
    radii: &[f64],
) -> Result<Vec<Roadmap>> {
    if samples.len() != problem.robot_count() || radii.len() != problem.robot_count() {
        return Err(invalid("need one sample set and radius per robot"));
    }
    (0..samples.len()).into_par_iter().map(|i| build_prm(&problem.robot_problem(i)?, &samples[i], radii[i])).collect()
}
