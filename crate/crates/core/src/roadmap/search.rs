use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::Roadmap;
use crate::error::{invalid, Error, Result};
use crate::geometry::Point;

/// Shortest roadmap path between two vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortestPath {
    pub vertices: Vec<usize>,
    pub points: Vec<Point>,
    pub length: f64,
}

/// Min-heap entry ordered by cost, then vertex index.
#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.cost.total_cmp(&self.cost).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `source`; stops early once `target` is settled.
/// Returns distances and predecessors (`usize::MAX` for none).
pub(crate) fn dijkstra(r: &Roadmap, source: usize, target: Option<usize>) -> (Vec<f64>, Vec<usize>) {
    let n = r.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry { cost: 0.0, vertex: source });
    while let Some(Entry { cost, vertex }) = heap.pop() {
        if done[vertex] {
            continue;
        }
        done[vertex] = true;
        if Some(vertex) == target {
            break;
        }
        for &(u, len) in r.neighbors(vertex) {
            let u = u as usize;
            let c = cost + len;
            if c < dist[u] {
                dist[u] = c;
                pred[u] = vertex;
                heap.push(Entry { cost: c, vertex: u });
            }
        }
    }
    (dist, pred)
}

impl Roadmap {
    /// Shortest-path distance from every vertex to `target`.
    pub fn distances_to(&self, target: usize) -> Vec<f64> {
        dijkstra(self, target, None).0
    }

    /// Shortest path between vertex indices.
    pub fn shortest_path_between(&self, from: usize, to: usize) -> Result<ShortestPath> {
        if from >= self.len() || to >= self.len() {
            return Err(invalid("vertex index out of range"));
        }
        let (dist, pred) = dijkstra(self, from, Some(to));
        if !dist[to].is_finite() {
            return Err(Error::Unreachable);
        }
        let mut vertices = vec![to];
        while *vertices.last().unwrap() != from {
            vertices.push(pred[*vertices.last().unwrap()]);
        }
        vertices.reverse();
        let points = vertices.iter().map(|&v| self.vertex(v).clone()).collect();
        Ok(ShortestPath { vertices, points, length: dist[to] })
    }
}

/// Shortest path between two roadmap vertices given by their coordinates.
pub fn shortest_path(r: &Roadmap, from: &Point, to: &Point) -> Result<ShortestPath> {
    let f = r.find_vertex(from).ok_or_else(|| invalid("`from` is not a roadmap vertex"))?;
    let t = r.find_vertex(to).ok_or_else(|| invalid("`to` is not a roadmap vertex"))?;
    r.shortest_path_between(f, t)
}
