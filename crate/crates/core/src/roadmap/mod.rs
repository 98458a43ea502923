//! Single-robot PRMs with the stretch-derived connection radius, shortest
//! paths, and snapping of continuous paths onto the grid.

mod io;
mod prm;
mod search;
mod snap;
mod trajectory;

pub use io::{RoadmapFile, ROADMAP_FORMAT_VERSION};
pub use prm::{build_prm, MotionProblem, Roadmap, RoadmapMeta};
pub use search::{shortest_path, ShortestPath};
pub use snap::{snap_path, GridSnapper, SnappedPath};
pub use trajectory::Trajectory;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::sampling::{GridParams, Stretch};

/// Grid and connection radius for one robot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotParams {
    pub grid: GridParams,
    pub radius: f64,
    /// Snapping step ρ, with `radius = 2β + ρ`.
    pub rho: f64,
}

/// Single-robot recipe: `β = αδ`, `γ = δ`, `r = 2(ε+1)/√(1+ε²)·δ`.
pub fn theorem1_params(epsilon: Stretch, delta: f64, dim: usize) -> Result<RobotParams> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(invalid(format!("delta must lie in (0, 0.5), got {delta}")));
    }
    let grid = GridParams::new(epsilon.alpha() * delta, delta, dim)?;
    let (radius, rho) = match epsilon {
        Stretch::Finite(e) => {
            let s = (1.0 + e * e).sqrt();
            (2.0 * (e + 1.0) / s * delta, 2.0 * delta / s)
        }
        Stretch::Infinite => (2.0 * delta, 0.0),
    };
    Ok(RobotParams { grid, radius, rho })
}
