use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Obstacle, Point, Segment};
use crate::error::{check_dim, invalid, Error, Result};

/// Whether the faces of the unit hypercube count as obstacles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClearanceMode {
    #[default]
    ObstaclesOnly,
    BoundaryAware,
}

/// Unit hypercube populated with obstacles, inflated by a robot radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWorkspace")]
pub struct Workspace {
    dim: usize,
    obstacles: Vec<Obstacle>,
    #[serde(default)]
    inflation: f64,
}

#[derive(Deserialize)]
struct RawWorkspace {
    dim: usize,
    obstacles: Vec<Obstacle>,
    #[serde(default)]
    inflation: f64,
}

impl TryFrom<RawWorkspace> for Workspace {
    type Error = Error;
    fn try_from(raw: RawWorkspace) -> Result<Self> {
        Workspace::new(raw.dim, raw.obstacles, raw.inflation)
    }
}

impl Workspace {
    pub fn new(dim: usize, obstacles: Vec<Obstacle>, inflation: f64) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("workspace dimension must be at least 1"));
        }
        if !(inflation.is_finite() && inflation >= 0.0) {
            return Err(invalid("inflation must be finite and non-negative"));
        }
        for o in &obstacles {
            check_dim(dim, o.dim())?;
            o.validate()?;
        }
        Ok(Workspace { dim, obstacles, inflation })
    }

    pub fn empty(dim: usize) -> Self {
        Workspace::new(dim, Vec::new(), 0.0).expect("empty workspace is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn inflation(&self) -> f64 {
        self.inflation
    }

    /// Same obstacles with a different inflation radius.
    pub fn with_inflation(&self, inflation: f64) -> Result<Self> {
        Workspace::new(self.dim, self.obstacles.clone(), inflation)
    }

    /// Signed clearance of `p` from the inflated obstacles; `+∞` when there are none.
    pub fn signed_clearance(&self, p: &Point) -> Result<f64> {
        self.signed_clearance_in(p, ClearanceMode::ObstaclesOnly)
    }

    pub fn signed_clearance_in(&self, p: &Point, mode: ClearanceMode) -> Result<f64> {
        check_dim(self.dim, p.dim())?;
        let c = self.clearance_raw(p.coords());
        Ok(match mode {
            ClearanceMode::ObstaclesOnly => c,
            ClearanceMode::BoundaryAware => c.min(boundary_distance(p.coords())),
        })
    }

    /// Exact minimum clearance along a segment.
    pub fn segment_clearance(&self, s: &Segment) -> Result<f64> {
        self.segment_clearance_in(s, ClearanceMode::ObstaclesOnly)
    }

    pub fn segment_clearance_in(&self, s: &Segment, mode: ClearanceMode) -> Result<f64> {
        check_dim(self.dim, s.a.dim())?;
        check_dim(self.dim, s.b.dim())?;
        let c = self.segment_clearance_raw(s.a.coords(), s.b.coords());
        Ok(match mode {
            ClearanceMode::ObstaclesOnly => c,
            // Distance to the cube boundary is concave along a segment inside
            // the cube, so its minimum is at an endpoint.
            ClearanceMode::BoundaryAware => c.min(boundary_distance(s.a.coords())).min(boundary_distance(s.b.coords())),
        })
    }

    /// True when `p` is strictly free of inflated obstacles.
    pub fn is_free(&self, p: &Point) -> Result<bool> {
        Ok(super::is_clear(self.signed_clearance(p)?))
    }

    pub(crate) fn clearance_raw(&self, p: &[f64]) -> f64 {
        self.obstacles.iter().map(|o| o.signed_distance(p) - self.inflation).fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn segment_clearance_raw(&self, a: &[f64], b: &[f64]) -> f64 {
        self.obstacles.iter().map(|o| o.segment_signed_distance(a, b) - self.inflation).fold(f64::INFINITY, f64::min)
    }

    /// Hex SHA-256 of the canonical JSON encoding, used to tag cached roadmaps.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("workspace serializes");
        let digest = Sha256::digest(&bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn boundary_distance(p: &[f64]) -> f64 {
    p.iter().map(|&c| c.min(1.0 - c)).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc_ws(inflation: f64) -> Workspace {
        Workspace::new(2, vec![Obstacle::Disc { center: Point::new([0.5, 0.5]), radius: 0.1 }], inflation).unwrap()
    }

    #[test]
    fn boundary_aware_center_of_empty_square() {
        let w = Workspace::empty(2);
        let c = w.signed_clearance_in(&Point::new([0.5, 0.5]), ClearanceMode::BoundaryAware).unwrap();
        assert_eq!(c, 0.5);
        assert_eq!(w.signed_clearance(&Point::new([0.5, 0.5])).unwrap(), f64::INFINITY);
    }

    #[test]
    fn inflated_disc_clearance() {
        let c = disc_ws(0.05).signed_clearance(&Point::new([0.8, 0.5])).unwrap();
        assert!((c - 0.15).abs() < 1e-12);
        assert!(disc_ws(0.0).signed_clearance(&Point::new([0.52, 0.5])).unwrap() < 0.0);
    }

    #[test]
    fn segment_across_disc() {
        let s = Segment::new(Point::new([0.1, 0.5]), Point::new([0.9, 0.5])).unwrap();
        let c = disc_ws(0.0).segment_clearance(&s).unwrap();
        assert!((c + 0.1).abs() < 1e-12);
    }

    #[test]
    fn grazing_segment_is_a_collision() {
        let s = Segment::new(Point::new([0.1, 0.65]), Point::new([0.9, 0.65])).unwrap();
        let c = disc_ws(0.05).segment_clearance(&s).unwrap();
        assert!(c.abs() < 1e-12);
        assert!(!crate::geometry::is_clear(c));
    }

    #[test]
    fn empty_segment_clearance_is_infinite() {
        let s = Segment::new(Point::new([0.1, 0.1]), Point::new([0.9, 0.3])).unwrap();
        assert_eq!(Workspace::empty(2).segment_clearance(&s).unwrap(), f64::INFINITY);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(disc_ws(0.0).signed_clearance(&Point::new([0.5, 0.5, 0.5])).is_err());
        let bad = Workspace::new(3, vec![Obstacle::Disc { center: Point::new([0.5, 0.5]), radius: 0.1 }], 0.0);
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_validates() {
        let w = disc_ws(0.05);
        let s = serde_json::to_string(&w).unwrap();
        let back: Workspace = serde_json::from_str(&s).unwrap();
        assert_eq!(w, back);
        assert_eq!(w.content_hash(), back.content_hash());
        let bad = r#"{"dim":2,"obstacles":[{"type":"disc","center":[0.5,0.5],"radius":-1.0}]}"#;
        assert!(serde_json::from_str::<Workspace>(bad).is_err());
    }
}
