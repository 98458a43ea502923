use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::{dist, is_clear, Point, Workspace, TOLERANCE};
use crate::sampling::{GridParams, SampleSet};
use crate::spatial::SpatialIndex;

/// A workspace with start and goal configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotionProblem {
    workspace: Workspace,
    start: Point,
    goal: Point,
}

impl MotionProblem {
    /// Fails with [`Error::InvalidProblem`] when start or goal is not strictly free.
    pub fn new(workspace: Workspace, start: Point, goal: Point) -> Result<Self> {
        check_dim(workspace.dim(), start.dim())?;
        check_dim(workspace.dim(), goal.dim())?;
        for (name, p) in [("start", &start), ("goal", &goal)] {
            if !workspace.is_free(p)? {
                return Err(Error::InvalidProblem(format!("{name} {:?} is in collision", p.coords())));
            }
        }
        Ok(MotionProblem { workspace, start, goal })
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn goal(&self) -> &Point {
        &self.goal
    }
}

/// Provenance of a roadmap, stored with exported roadmaps.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoadmapMeta {
    pub grid: Option<GridParams>,
    pub workspace_hash: String,
    pub sample_count: usize,
}

/// Radius graph over free samples plus start and goal.
#[derive(Clone, Debug, PartialEq)]
pub struct Roadmap {
    pub(crate) vertices: Vec<Point>,
    /// Sorted by neighbor index.
    pub(crate) adjacency: Vec<Vec<(u32, f64)>>,
    pub(crate) radius: f64,
    pub(crate) start: usize,
    pub(crate) goal: usize,
    pub(crate) meta: RoadmapMeta,
}

impl Roadmap {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn goal(&self) -> usize {
        self.goal
    }

    pub fn meta(&self) -> &RoadmapMeta {
        &self.meta
    }

    /// `(neighbor, edge length)` pairs of vertex `i`, by increasing neighbor.
    pub fn neighbors(&self, i: usize) -> &[(u32, f64)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges `(i, j, length)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &(j, len) in adj {
                if (j as usize) > i {
                    out.push((i, j as usize, len));
                }
            }
        }
        out
    }

    pub fn edge_length(&self, i: usize, j: usize) -> Option<f64> {
        let adj = &self.adjacency[i];
        adj.binary_search_by_key(&(j as u32), |&(k, _)| k).ok().map(|k| adj[k].1)
    }

    /// Lowest-index vertex with exactly the coordinates of `p`.
    pub fn find_vertex(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Rebuild from explicit parts, checking the structural invariants.
    pub(crate) fn from_parts(
        vertices: Vec<Point>,
        edges: &[(usize, usize, f64)],
        radius: f64,
        start: usize,
        goal: usize,
        meta: RoadmapMeta,
    ) -> Result<Self> {
        let n = vertices.len();
        if start >= n || goal >= n {
            return Err(invalid("start/goal index out of range"));
        }
        let d = vertices[0].dim();
        for v in &vertices {
            check_dim(d, v.dim())?;
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j, len) in edges {
            if i >= n || j >= n || i == j {
                return Err(invalid(format!("bad edge ({i}, {j})")));
            }
            let actual = vertices[i].distance(&vertices[j]);
            if (actual - len).abs() > 1e-9 * actual.max(1.0) {
                return Err(invalid(format!("edge ({i}, {j}) length {len} differs from {actual}")));
            }
            if actual > radius + TOLERANCE {
                return Err(invalid(format!("edge ({i}, {j}) is longer than the radius")));
            }
            adjacency[i].push((j as u32, actual));
            adjacency[j].push((i as u32, actual));
        }
        for adj in &mut adjacency {
            adj.sort_by_key(|&(k, _)| k);
            adj.dedup_by_key(|&mut (k, _)| k);
        }
        Ok(Roadmap { vertices, adjacency, radius, start, goal, meta })
    }
}

/// PRM over `samples ∪ {start, goal}` restricted to free configurations of
/// the unit cube. Two vertices are joined when they are within `radius` and
/// the straight segment between them is strictly free.
///
/// Vertex order: free samples in input order, then start, then goal.
pub fn build_prm(m: &MotionProblem, samples: &SampleSet, radius: f64) -> Result<Roadmap> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid(format!("radius must be positive, got {radius}")));
    }
    let ws = m.workspace();
    for (name, p) in [("start", m.start()), ("goal", m.goal())] {
        if !is_clear(ws.clearance_raw(p.coords())) {
            return Err(Error::InvalidProblem(format!("{name} is in collision")));
        }
    }
    let d = ws.dim();
    for p in &samples.points {
        check_dim(d, p.dim())?;
    }
    let mut vertices: Vec<Point> = samples
        .points
        .par_iter()
        .filter(|p| p.within_cube(0.0, 1.0) && is_clear(ws.clearance_raw(p.coords())))
        .cloned()
        .collect();
    let start = vertices.len();
    vertices.push(m.start().clone());
    vertices.push(m.goal().clone());
    let goal = start + 1;

    let adjacency = connect(&vertices, radius, |a, b| is_clear(ws.segment_clearance_raw(a, b)));
    Ok(Roadmap {
        vertices,
        adjacency,
        radius,
        start,
        goal,
        meta: RoadmapMeta { grid: None, workspace_hash: ws.content_hash(), sample_count: samples.len() },
    })
}

/// Radius graph with an arbitrary edge predicate, via a bucket grid of cell `radius`.
pub(crate) fn connect(
    vertices: &[Point],
    radius: f64,
    free: impl Fn(&[f64], &[f64]) -> bool + Sync,
) -> Vec<Vec<(u32, f64)>> {
    let index = SpatialIndex::new(vertices, radius + TOLERANCE);
    let forward: Vec<Vec<(u32, f64)>> = (0..vertices.len())
        .into_par_iter()
        .map(|i| {
            let a = vertices[i].coords();
            index
                .within(a, radius, TOLERANCE)
                .into_iter()
                .filter(|&j| j > i)
                .filter(|&j| free(a, vertices[j].coords()))
                .map(|j| (j as u32, dist(a, vertices[j].coords())))
                .collect()
        })
        .collect();
    let mut adjacency: Vec<Vec<(u32, f64)>> = forward.clone();
    for (i, adj) in forward.iter().enumerate() {
        for &(j, len) in adj {
            adjacency[j as usize].push((i as u32, len));
        }
    }
    for adj in &mut adjacency {
        adj.sort_by_key(|&(k, _)| k);
    }
    adjacency
}

impl Roadmap {
    /// Attach the grid parameters the samples were generated from.
    pub fn with_grid(mut self, grid: GridParams) -> Self {
        self.meta.grid = Some(grid);
        self
    }
}
