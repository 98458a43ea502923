use serde::{Deserialize, Serialize};

use super::{ReferenceSpec, ScenarioFile};
use crate::error::{Error, Result};
use crate::roadmap::{build_prm, shortest_path, theorem1_params, MotionProblem};
use crate::sampling::{staggered_grid, SampleSet, Stretch};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCost {
    pub cost: f64,
    /// Per-robot parts of the cost, when the reference splits by robot.
    pub per_robot: Vec<f64>,
    pub lower_bound: bool,
}

/// Reference cost of a scene, as declared by its [`ReferenceSpec`].
pub fn reference_cost(s: &ScenarioFile) -> Result<ReferenceCost> {
    let per_robot = match &s.reference {
        ReferenceSpec::StraightLineSum => s.robots.iter().map(|r| r.start.distance(&r.goal)).collect(),
        ReferenceSpec::CirclePerimeter { radius, .. } => {
            let cost = 2.0 * std::f64::consts::PI * radius;
            return Ok(ReferenceCost { cost, per_robot: Vec::new(), lower_bound: s.reference_lower_bound });
        }
        ReferenceSpec::ClearPathOracle { epsilon, resolution } => {
            clear_path_oracle(s, Stretch::new(*epsilon)?, *resolution)?
        }
    };
    Ok(ReferenceCost { cost: per_robot.iter().sum(), per_robot, lower_bound: s.reference_lower_bound })
}

/// Per-robot shortest path lengths keeping clearance μ from the obstacles,
/// ignoring the other robots. Each robot plans on a single-robot roadmap built
/// with the stretch-`epsilon` recipe at clearance `resolution`, over the
/// obstacles inflated by its radius plus μ (less 1e-6, so that endpoints at
/// exactly μ stay usable).
pub fn clear_path_oracle(s: &ScenarioFile, epsilon: Stretch, resolution: f64) -> Result<Vec<f64>> {
    let params = theorem1_params(epsilon, resolution, s.workspace.dim())?;
    let grid = staggered_grid(&params.grid)?;
    let mut out = vec![0.0; s.robot_count()];
    let mut radii: Vec<f64> = s.robots.iter().map(|r| r.radius).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    for radius in radii {
        let ws = s.workspace.with_inflation(radius + s.mu - 1e-6)?;
        let group: Vec<usize> = (0..s.robot_count()).filter(|&i| s.robots[i].radius == radius).collect();
        // Every endpoint joins the sample set so one roadmap serves the group.
        let mut points = grid.points.clone();
        points.extend(group.iter().flat_map(|&i| [s.robots[i].start.clone(), s.robots[i].goal.clone()]));
        let first = &s.robots[group[0]];
        let problem = MotionProblem::new(ws, first.start.clone(), first.goal.clone())?;
        let roadmap = build_prm(&problem, &SampleSet::explicit(points), params.radius)?;
        for &i in &group {
            let r = &s.robots[i];
            out[i] = match shortest_path(&roadmap, &r.start, &r.goal) {
                Ok(p) => p.length,
                Err(Error::Unreachable) => {
                    return Err(Error::PlanningFailed(format!("robot {i} has no clear path at this resolution")))
                }
                Err(e) => return Err(e),
            };
        }
    }
    Ok(out)
}
