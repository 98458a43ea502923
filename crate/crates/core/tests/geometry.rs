mod common;

use proptest::prelude::*;

use common::{boundary_points, polygon, pt, random_obstacle, random_workspace, rng};
use tensor_roadmap::geometry::{moving_pair_min_distance, Obstacle, Point, Segment, Workspace};

fn point2() -> impl Strategy<Value = Point> {
    (0.0..1.0f64, 0.0..1.0f64).prop_map(|(x, y)| pt(x, y))
}

/// Distance to the nearest of 10⁴ sampled boundary points of each obstacle.
fn sampled_boundary_distance(ws: &Workspace, p: &Point) -> f64 {
    ws.obstacles()
        .iter()
        .flat_map(|o| boundary_points(o, 10_000))
        .map(|b| ((b[0] - p[0]).powi(2) + (b[1] - p[1]).powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn clearance_matches_sampled_boundary_outside(seed in any::<u64>(), p in point2()) {
        let ws = random_workspace(&mut rng(seed), 4);
        let c = ws.signed_clearance(&p).unwrap();
        prop_assume!(c > 0.01);
        let mc = sampled_boundary_distance(&ws, &p);
        prop_assert!((c - mc).abs() < 1e-6, "exact {} sampled {}", c, mc);
    }

    #[test]
    fn penetration_depth_matches_sampled_boundary(seed in any::<u64>(), p in point2()) {
        let o = random_obstacle(&mut rng(seed));
        let ws = Workspace::new(2, vec![o], 0.0).unwrap();
        let c = ws.signed_clearance(&p).unwrap();
        prop_assume!(c.abs() > 0.01);
        let mc = sampled_boundary_distance(&ws, &p);
        prop_assert!((c.abs() - mc).abs() < 1e-6, "exact {} sampled {}", c, mc);
    }

    #[test]
    fn segment_clearance_bounded_by_endpoints(seed in any::<u64>(), a in point2(), b in point2()) {
        let ws = random_workspace(&mut rng(seed), 5);
        let s = Segment::new(a.clone(), b.clone()).unwrap();
        let sc = ws.segment_clearance(&s).unwrap();
        let ca = ws.signed_clearance(&a).unwrap();
        let cb = ws.signed_clearance(&b).unwrap();
        prop_assert!(sc <= ca.min(cb) + 1e-12);
        // Any interior point bounds it too.
        let mid = a.lerp(&b, 0.37);
        prop_assert!(sc <= ws.signed_clearance(&mid).unwrap() + 1e-12);
    }

    #[test]
    fn inflation_shifts_clearance(seed in any::<u64>(), p in point2(), r in 0.0..0.1f64) {
        let ws = random_workspace(&mut rng(seed), 3);
        let c0 = ws.signed_clearance(&p).unwrap();
        let c1 = ws.with_inflation(r).unwrap().signed_clearance(&p).unwrap();
        prop_assert!((c0 - r - c1).abs() < 1e-12);
    }

    #[test]
    fn moving_pair_symmetries(
        p0 in point2(), p1 in point2(), q0 in point2(), q1 in point2(),
        dx in -2.0..2.0f64, dy in -2.0..2.0f64,
    ) {
        let d = moving_pair_min_distance(&p0, &p1, &q0, &q1).unwrap();
        prop_assert_eq!(d.to_bits(), moving_pair_min_distance(&p0, &p1, &q0, &q1).unwrap().to_bits());
        prop_assert!((d - moving_pair_min_distance(&q0, &q1, &p0, &p1).unwrap()).abs() < 1e-12);
        prop_assert!((d - moving_pair_min_distance(&p1, &p0, &q1, &q0).unwrap()).abs() < 1e-12);
        let t = |p: &Point| pt(p[0] + dx, p[1] + dy);
        prop_assert!((d - moving_pair_min_distance(&t(&p0), &t(&p1), &t(&q0), &t(&q1)).unwrap()).abs() < 1e-9);
        prop_assert!(d <= p0.distance(&q0) + 1e-12 && d <= p1.distance(&q1) + 1e-12);
        prop_assert!(d >= 0.0);
    }

    #[test]
    fn predicates_are_bit_deterministic(seed in any::<u64>(), a in point2(), b in point2()) {
        let ws = random_workspace(&mut rng(seed), 5);
        let s = Segment::new(a.clone(), b).unwrap();
        prop_assert_eq!(ws.segment_clearance(&s).unwrap().to_bits(), ws.clone().segment_clearance(&s).unwrap().to_bits());
        prop_assert_eq!(ws.signed_clearance(&a).unwrap().to_bits(), ws.signed_clearance(&a).unwrap().to_bits());
    }
}

#[test]
fn polygon_and_disc_agree_in_the_limit() {
    // A 2000-gon is within 1e-5 of its circumscribed disc.
    let poly = Workspace::new(2, vec![polygon([0.5, 0.5], 0.2, 2000, 0.0)], 0.0).unwrap();
    let disc = Workspace::new(2, vec![Obstacle::Disc { center: pt(0.5, 0.5), radius: 0.2 }], 0.0).unwrap();
    for p in [pt(0.9, 0.5), pt(0.1, 0.2), pt(0.55, 0.45)] {
        let (a, b) = (poly.signed_clearance(&p).unwrap(), disc.signed_clearance(&p).unwrap());
        assert!((a - b).abs() < 1e-5, "{a} vs {b}");
    }
}
