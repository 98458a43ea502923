use super::{CompositeVertex, MultiRobotProblem};
use crate::geometry::{moving_pair_min_distance_raw, TOLERANCE};
use crate::roadmap::Roadmap;

struct Walk<'a, F> {
    roadmaps: &'a [Roadmap],
    radii: Vec<f64>,
    from: &'a [u32],
    to: Vec<u32>,
    steps: Vec<f64>,
    cap: usize,
    emit: F,
}

impl<F: FnMut(&[u32], &[f64])> Walk<'_, F> {
    fn coords(&self, i: usize, v: u32) -> &[f64] {
        self.roadmaps[i].vertex(v as usize).coords()
    }

    /// Robot `i` going `from[i] -> target` keeps clear of robots `0..i`.
    fn compatible(&self, i: usize, target: u32) -> bool {
        let (p0, p1) = (self.coords(i, self.from[i]), self.coords(i, target));
        let i_moves = target != self.from[i];
        (0..i).all(|j| {
            let j_moves = self.to[j] != self.from[j];
            if !i_moves && !j_moves {
                return true;
            }
            let (q0, q1) = (self.coords(j, self.from[j]), self.coords(j, self.to[j]));
            moving_pair_min_distance_raw(p0, p1, q0, q1) > self.radii[i] + self.radii[j] + TOLERANCE
        })
    }

    fn go(&mut self, i: usize, moved: usize) {
        if i == self.from.len() {
            if moved > 0 {
                (self.emit)(&self.to, &self.steps);
            }
            return;
        }
        let here = self.from[i];
        if self.compatible(i, here) {
            self.to[i] = here;
            self.steps[i] = 0.0;
            self.go(i + 1, moved);
        }
        if moved < self.cap {
            let roadmaps = self.roadmaps;
            for &(u, len) in roadmaps[i].neighbors(here as usize) {
                if self.compatible(i, u) {
                    self.to[i] = u;
                    self.steps[i] = len;
                    self.go(i + 1, moved + 1);
                }
            }
        }
        self.to[i] = here;
        self.steps[i] = 0.0;
    }
}

/// Calls `f(target, step_lengths)` for every composite neighbor of `v` in
/// which between 1 and `move_cap` robots traverse a roadmap edge, the others
/// stay, and no two discs touch during the synchronous move. Order: robot 0's
/// choice varies slowest, staying before moving, neighbors in ascending order.
pub fn for_each_tensor_neighbor(
    problem: &MultiRobotProblem,
    roadmaps: &[Roadmap],
    v: &CompositeVertex,
    move_cap: usize,
    f: impl FnMut(&[u32], &[f64]),
) {
    assert_eq!(v.robots(), roadmaps.len(), "one roadmap per robot");
    let n = v.robots();
    let mut walk = Walk {
        roadmaps,
        radii: problem.robots().iter().map(|r| r.radius).collect(),
        from: &v.0,
        to: v.0.clone(),
        steps: vec![0.0; n],
        cap: move_cap,
        emit: f,
    };
    walk.go(0, 0);
}

/// Composite neighbors of `v` with their summed step lengths.
pub fn tensor_neighbors(
    problem: &MultiRobotProblem,
    roadmaps: &[Roadmap],
    v: &CompositeVertex,
    move_cap: usize,
) -> Vec<(CompositeVertex, f64)> {
    let mut out = Vec::new();
    for_each_tensor_neighbor(problem, roadmaps, v, move_cap, |to, steps| {
        out.push((CompositeVertex(to.to_vec()), steps.iter().sum()))
    });
    out
}
