//! Brute-force oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tensor_roadmap::geometry::{is_clear, moving_pair_min_distance, Obstacle, Point, Segment, Workspace, TOLERANCE};
use tensor_roadmap::mrmp::{tensor_neighbors, CompositeVertex, CostMetric, MultiRobotProblem, RobotSpec};
use tensor_roadmap::roadmap::{build_prm, theorem1_params, MotionProblem, Roadmap};
use tensor_roadmap::sampling::{random_samples, staggered_grid, SampleSet, Stretch};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(x: f64, y: f64) -> Point {
    Point::new([x, y])
}

/// Convex polygon with `k` vertices on a circle, counter-clockwise.
pub fn polygon(center: [f64; 2], radius: f64, k: usize, phase: f64) -> Obstacle {
    let vertices = (0..k)
        .map(|i| {
            let a = phase + std::f64::consts::TAU * i as f64 / k as f64;
            pt(center[0] + radius * a.cos(), center[1] + radius * a.sin())
        })
        .collect();
    Obstacle::ConvexPolygon { vertices }
}

pub fn random_obstacle(rng: &mut ChaCha8Rng) -> Obstacle {
    let c = [rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)];
    match rng.gen_range(0..4) {
        0 => Obstacle::Disc { center: pt(c[0], c[1]), radius: rng.gen_range(0.03..0.15) },
        1 => Obstacle::HyperSphere { center: pt(c[0], c[1]), radius: rng.gen_range(0.03..0.15) },
        2 => {
            let (w, h) = (rng.gen_range(0.02..0.15), rng.gen_range(0.02..0.15));
            Obstacle::HyperBox { lo: pt(c[0] - w, c[1] - h), hi: pt(c[0] + w, c[1] + h) }
        }
        _ => polygon(c, rng.gen_range(0.04..0.15), rng.gen_range(3..8), rng.gen_range(0.0..1.0)),
    }
}

pub fn random_workspace(rng: &mut ChaCha8Rng, max_obstacles: usize) -> Workspace {
    let n = rng.gen_range(1..=max_obstacles);
    Workspace::new(2, (0..n).map(|_| random_obstacle(rng)).collect(), 0.0).unwrap()
}

/// `n` points evenly spread along the boundary of a planar obstacle.
pub fn boundary_points(o: &Obstacle, n: usize) -> Vec<[f64; 2]> {
    let circle = |c: &Point, r: f64| {
        (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                [c[0] + r * a.cos(), c[1] + r * a.sin()]
            })
            .collect()
    };
    let ring = |vs: Vec<[f64; 2]>| {
        let per = n / vs.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..vs.len() {
            let (a, b) = (vs[k], vs[(k + 1) % vs.len()]);
            for i in 0..per {
                let t = i as f64 / per as f64;
                out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        out
    };
    match o {
        Obstacle::Disc { center, radius } | Obstacle::HyperSphere { center, radius } => circle(center, *radius),
        Obstacle::HyperBox { lo, hi } => ring(vec![[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]]),
        Obstacle::ConvexPolygon { vertices } => ring(vertices.iter().map(|v| [v[0], v[1]]).collect()),
    }
}

/// All-pairs PRM edge set over the same vertex list `build_prm` uses.
pub fn brute_force_edges(m: &MotionProblem, samples: &SampleSet, radius: f64) -> BTreeSet<(usize, usize)> {
    let ws = m.workspace();
    let mut vertices: Vec<Point> = samples
        .points
        .iter()
        .filter(|p| p.within_cube(0.0, 1.0) && ws.signed_clearance(p).unwrap() > TOLERANCE)
        .cloned()
        .collect();
    vertices.push(m.start().clone());
    vertices.push(m.goal().clone());
    let mut edges = BTreeSet::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i].distance(&vertices[j]) > radius + TOLERANCE {
                continue;
            }
            let s = Segment::new(vertices[i].clone(), vertices[j].clone()).unwrap();
            if is_clear(ws.segment_clearance(&s).unwrap()) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

pub fn edge_set(r: &Roadmap) -> BTreeSet<(usize, usize)> {
    r.edges().into_iter().map(|(i, j, _)| (i, j)).collect()
}

/// Minimum distance between two synchronized linear motions, by sampling `steps + 1` instants.
pub fn dense_pair_min(p0: &Point, p1: &Point, q0: &Point, q1: &Point, steps: usize) -> f64 {
    (0..=steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            p0.lerp(p1, t).distance(&q0.lerp(q1, t))
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn free_point(ws: &Workspace, r: &mut ChaCha8Rng) -> Point {
    loop {
        let p = pt(r.gen_range(0.02..0.98), r.gen_range(0.02..0.98));
        if ws.signed_clearance(&p).unwrap() > 0.01 {
            return p;
        }
    }
}

/// Random PRM instance with at most 200 samples (random or staggered, by
/// seed parity); returns the number of edges on which `build_prm` and the
/// all-pairs oracle disagree.
pub fn prm_oracle_mismatches(seed: u64) -> usize {
    let mut r = rng(seed);
    let ws = random_workspace(&mut r, 4);
    let (s, g) = (free_point(&ws, &mut r), free_point(&ws, &mut r));
    let m = MotionProblem::new(ws, s, g).unwrap();
    let samples = if seed % 2 == 0 {
        random_samples(r.gen_range(20..200), 0.0, 2, seed).unwrap()
    } else {
        let p = theorem1_params(Stretch::Finite(r.gen_range(0.5..5.0)), r.gen_range(0.08..0.2), 2).unwrap();
        staggered_grid(&p.grid).unwrap()
    };
    assert!(samples.len() <= 200, "{}", samples.len());
    let radius = r.gen_range(0.05..0.4);
    let prm = build_prm(&m, &samples, radius).unwrap();
    edge_set(&prm).symmetric_difference(&brute_force_edges(&m, &samples, radius)).count()
}

/// Compares tensor-roadmap edge verdicts for two robots of radius 0.06
/// against 1000-step dense sampling on at least `edges` composite edges
/// starting from close configurations. Returns `(checked, grazing, wrong)`:
/// disagreements within 1e-6 of touching count as grazing, others as wrong.
pub fn tensor_edge_disagreements(seed: u64, edges: usize) -> (usize, usize, usize) {
    let robot =
        |s: [f64; 2], g: [f64; 2]| RobotSpec { radius: 0.06, delta: 0.02, start: pt(s[0], s[1]), goal: pt(g[0], g[1]) };
    let problem = MultiRobotProblem::new(
        Workspace::empty(2),
        vec![robot([0.2, 0.2], [0.8, 0.8]), robot([0.8, 0.2], [0.2, 0.8])],
        CostMetric::Sum,
    )
    .unwrap();
    let mut r = rng(seed);
    let samples = SampleSet::explicit((0..300).map(|_| pt(r.gen_range(0.05..0.95), r.gen_range(0.05..0.95))).collect());
    let roadmaps: Vec<_> =
        (0..2).map(|i| build_prm(&problem.robot_problem(i).unwrap(), &samples, 0.12).unwrap()).collect();
    let touch = 0.12;
    let (mut checked, mut grazing, mut wrong) = (0, 0, 0);
    while checked < edges {
        let a = r.gen_range(0..roadmaps[0].len());
        let b = r.gen_range(0..roadmaps[1].len());
        let (pa, pb) = (roadmaps[0].vertex(a), roadmaps[1].vertex(b));
        let gap = pa.distance(pb);
        if gap <= touch + TOLERANCE || gap > 0.3 {
            continue;
        }
        let v = CompositeVertex(vec![a as u32, b as u32]);
        let emitted: BTreeSet<Vec<u32>> =
            tensor_neighbors(&problem, &roadmaps, &v, 2).into_iter().map(|(w, _)| w.0).collect();
        let targets = |k: usize, from: usize| {
            std::iter::once(from as u32).chain(roadmaps[k].neighbors(from).iter().map(|&(u, _)| u)).collect::<Vec<_>>()
        };
        for &ta in &targets(0, a) {
            for &tb in &targets(1, b) {
                if ta == a as u32 && tb == b as u32 {
                    continue;
                }
                let (qa, qb) = (roadmaps[0].vertex(ta as usize), roadmaps[1].vertex(tb as usize));
                let dense_ok = dense_pair_min(pa, qa, pb, qb, 1000) > touch;
                if emitted.contains(&vec![ta, tb]) != dense_ok {
                    let exact = moving_pair_min_distance(pa, qa, pb, qb).unwrap();
                    if (exact - touch).abs() < 1e-6 {
                        grazing += 1;
                    } else {
                        wrong += 1;
                    }
                }
                checked += 1;
            }
        }
    }
    (checked, grazing, wrong)
}
