//! Benchmark scenes, reference costs and experiment drivers.
//!
//! Scenes are stored as versioned JSON (see [`ScenarioFile`]); the four
//! built-in scenes live in the crate's `data/` directory.

mod experiment;
mod reference;
mod render;
pub mod synthetic;

pub use experiment::{
    default_epsilons, plan_scenario, run_random_comparison, run_ratio_sweep, run_ratio_sweep_with, ComparisonRow,
    ExperimentResult, PlanOutcome, RandomComparison, SweepConfig, SweepRow,
};
pub use reference::{clear_path_oracle, reference_cost, ReferenceCost};
pub use render::render_svg;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{Point, Workspace};
use crate::mrmp::{CostMetric, MultiRobotProblem, RobotSpec};

pub const SCENARIO_FORMAT_VERSION: u32 = 1;

/// Tolerance on the stored static clearance.
pub const MU_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRobot {
    pub radius: f64,
    pub start: Point,
    pub goal: Point,
}

/// How the reference cost of a scene is obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReferenceSpec {
    /// Sum of start-goal distances.
    StraightLineSum,
    /// Perimeter of the circle every robot travels a part of.
    CirclePerimeter { center: Point, radius: f64 },
    /// Sum of per-robot shortest paths keeping clearance μ, each computed on a
    /// dense single-robot roadmap.
    ClearPathOracle { epsilon: f64, resolution: f64 },
}

/// A multi-robot scene in the unit square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub format_version: u32,
    pub name: String,
    #[serde(default)]
    pub notes: String,
    pub workspace: Workspace,
    pub robots: Vec<ScenarioRobot>,
    /// Static clearance: smallest start-start, goal-goal, start-obstacle or
    /// goal-obstacle gap between disc boundaries.
    pub mu: f64,
    pub reference: ReferenceSpec,
    /// The reference cost only bounds the optimum from below.
    #[serde(default)]
    pub reference_lower_bound: bool,
}

impl ScenarioFile {
    /// Parse and validate, including the stored μ.
    pub fn from_json(s: &str) -> Result<Self> {
        let f: ScenarioFile = serde_json::from_str(s)?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != SCENARIO_FORMAT_VERSION {
            return Err(invalid(format!("unsupported scenario version {}", self.format_version)));
        }
        if self.robots.is_empty() {
            return Err(invalid("scenario has no robots"));
        }
        for r in &self.robots {
            crate::error::check_dim(self.workspace.dim(), r.start.dim())?;
            crate::error::check_dim(self.workspace.dim(), r.goal.dim())?;
            if !(r.radius > 0.0 && r.radius.is_finite()) {
                return Err(invalid("robot radius must be positive"));
            }
        }
        let mu = self.static_clearance();
        if (mu - self.mu).abs() > MU_TOLERANCE {
            return Err(Error::InvalidProblem(format!(
                "scenario `{}` stores mu = {} but its static clearance is {mu}",
                self.name, self.mu
            )));
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidProblem("static clearance must be positive".into()));
        }
        Ok(())
    }

    /// Static clearance computed from the geometry.
    pub fn static_clearance(&self) -> f64 {
        let ws = self.workspace.with_inflation(0.0).expect("zero inflation is valid");
        let mut mu = f64::INFINITY;
        for (i, a) in self.robots.iter().enumerate() {
            for p in [&a.start, &a.goal] {
                mu = mu.min(ws.clearance_raw(p.coords()) - a.radius);
            }
            for b in &self.robots[i + 1..] {
                mu = mu.min(a.start.distance(&b.start) - a.radius - b.radius);
                mu = mu.min(a.goal.distance(&b.goal) - a.radius - b.radius);
            }
        }
        mu
    }

    pub fn robot_count(&self) -> usize {
        self.robots.len()
    }

    /// The planning problem with every robot's clearance set to μ.
    pub fn to_problem(&self) -> Result<MultiRobotProblem> {
        let robots = self
            .robots
            .iter()
            .map(|r| RobotSpec { radius: r.radius, delta: self.mu, start: r.start.clone(), goal: r.goal.clone() })
            .collect();
        MultiRobotProblem::new(self.workspace.with_inflation(0.0)?, robots, CostMetric::Sum)
    }
}

const BUILTIN: [(&str, &str); 4] = [
    ("open2", include_str!("../../data/open2.json")),
    ("spiral2", include_str!("../../data/spiral2.json")),
    ("circle4", include_str!("../../data/circle4.json")),
    ("lanes7", include_str!("../../data/lanes7.json")),
];

/// The four benchmark scenes: `open2` (2 robots, radius 0.09, μ = 0.02, no
/// obstacles), `spiral2` (2 robots, radius 0.06, μ = 0.04, spiral corridor),
/// `circle4` (4 robots, radius 0.19, μ = 0.02, circular barrier) and `lanes7`
/// (7 robots, radius 0.08, μ = 0.04).
pub fn builtin_scenarios() -> Vec<ScenarioFile> {
    BUILTIN.iter().map(|(_, s)| ScenarioFile::from_json(s).expect("built-in scene is valid")).collect()
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// A built-in scene by name.
pub fn builtin(name: &str) -> Result<ScenarioFile> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| ScenarioFile::from_json(s)).unwrap_or_else(|| {
        Err(invalid(format!("unknown scenario `{name}`; built-ins: {}", builtin_names().join(", "))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load_with_stated_clearance() {
        let want = [
            ("open2", 2, 0.09, 0.02),
            ("spiral2", 2, 0.06, 0.04),
            ("circle4", 4, 0.19, 0.02),
            ("lanes7", 7, 0.08, 0.04),
        ];
        for (s, (name, n, r, mu)) in builtin_scenarios().iter().zip(want) {
            assert_eq!(s.name, name);
            assert_eq!(s.robot_count(), n);
            assert!(s.robots.iter().all(|x| x.radius == r));
            assert!((s.static_clearance() - mu).abs() <= MU_TOLERANCE, "{name}: {}", s.static_clearance());
            s.to_problem().unwrap();
        }
    }

    #[test]
    fn wrong_mu_is_rejected() {
        let mut s = builtin("open2").unwrap();
        s.mu = 0.03;
        assert!(ScenarioFile::from_json(&s.to_json().unwrap()).is_err());
        assert!(builtin("nope").is_err());
    }
}
