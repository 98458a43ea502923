//! Near-optimal sampling-based motion planning on staggered grids.
//!
//! The crate builds probabilistic roadmaps whose vertices are a deterministic
//! staggered grid and whose connection radius is chosen so that the roadmap
//! contains a path at most `(1 + ε)` times longer than the best `δ`-clear
//! path. Multi-robot problems are solved by searching the implicitly
//! represented tensor product of the per-robot roadmaps.
//!
//! Modules, bottom up:
//! - [`geometry`]: points, obstacles, exact clearance and swept-pair distances.
//! - [`sampling`]: staggered grids, random baselines and sample-size bounds.
//! - [`roadmap`]: single-robot PRM construction, shortest paths, path snapping.
//! - [`mrmp`]: tensor-roadmap search and the prioritized timing planner.
//! - [`scenarios`]: benchmark scenes, reference costs and experiment drivers.

pub mod error;
pub mod geometry;

pub use error::{Error, Result};
pub mod mrmp;
pub mod roadmap;
pub mod sampling;
pub mod scenarios;
pub mod spatial;
