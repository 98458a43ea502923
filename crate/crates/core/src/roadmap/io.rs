use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Roadmap, RoadmapMeta};
use crate::error::{invalid, Result};
use crate::geometry::Point;

pub const ROADMAP_FORMAT_VERSION: u32 = 1;

/// On-disk JSON form of a [`Roadmap`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoadmapFile {
    pub version: u32,
    pub radius: f64,
    pub start: usize,
    pub goal: usize,
    pub vertices: Vec<Point>,
    /// `[i, j, length]` with `i < j`.
    pub edges: Vec<(usize, usize, f64)>,
    pub metadata: RoadmapMeta,
}

impl Roadmap {
    pub fn to_file(&self) -> RoadmapFile {
        RoadmapFile {
            version: ROADMAP_FORMAT_VERSION,
            radius: self.radius,
            start: self.start,
            goal: self.goal,
            vertices: self.vertices.clone(),
            edges: self.edges(),
            metadata: self.meta.clone(),
        }
    }

    pub fn from_file(f: RoadmapFile) -> Result<Self> {
        if f.version != ROADMAP_FORMAT_VERSION {
            return Err(invalid(format!("unsupported roadmap version {}", f.version)));
        }
        Roadmap::from_parts(f.vertices, &f.edges, f.radius, f.start, f.goal, f.metadata)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Roadmap::from_file(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Roadmap::from_json(&std::fs::read_to_string(path)?)
    }
}
