//! Staggered-grid and random sample sets, cover verification and the
//! sample-size bounds used to compare grids against coverings and lower bounds.

mod bounds;
mod cover;
mod grid;
mod stretch;

pub use bounds::{
    asymptotic_ratios, bounds_table, display_count, multi_robot_sample_count, size_curr, size_lower_bound,
    size_lower_bound_stirling, size_prev, size_prev_stirling, table1, AsymptoticRatios, BoundsQuery, BoundsRow,
};
pub use cover::{verify_beta_cover, CoverReport};
pub use grid::{random_samples, staggered_grid, GridParams};
pub use stretch::Stretch;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;

/// Where a sample set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Staggered,
    Random { seed: u64 },
    Explicit,
}

/// Ordered, duplicate-free set of sample points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub points: Vec<Point>,
    pub provenance: Provenance,
}

impl SampleSet {
    pub fn explicit(points: Vec<Point>) -> Self {
        SampleSet { points, provenance: Provenance::Explicit }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Point::dim)
    }
}
