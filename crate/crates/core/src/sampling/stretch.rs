use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Stretch parameter ε, either a positive real or ∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stretch {
    Finite(f64),
    Infinite,
}

impl Stretch {
    pub fn new(eps: f64) -> Result<Self> {
        if eps == f64::INFINITY {
            Ok(Stretch::Infinite)
        } else if eps.is_finite() && eps > 0.0 {
            Ok(Stretch::Finite(eps))
        } else {
            Err(invalid(format!("stretch must be positive or inf, got {eps}")))
        }
    }

    /// `+∞` for the infinite sentinel.
    pub fn value(self) -> f64 {
        match self {
            Stretch::Finite(e) => e,
            Stretch::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Stretch::Infinite)
    }

    /// Single-robot grid factor `α = ε/√(1+ε²)`, 1 at ∞.
    pub fn alpha(self) -> f64 {
        match self {
            Stretch::Finite(e) => e / (1.0 + e * e).sqrt(),
            Stretch::Infinite => 1.0,
        }
    }

    /// Multi-robot grid factor `ω = ε/(2(ε+2))`, 1/2 at ∞.
    pub fn omega(self) -> f64 {
        match self {
            Stretch::Finite(e) => e / (2.0 * (e + 2.0)),
            Stretch::Infinite => 0.5,
        }
    }
}

impl fmt::Display for Stretch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stretch::Finite(e) => write!(f, "{e}"),
            Stretch::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Stretch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" || s.eq_ignore_ascii_case("infinity") {
            return Ok(Stretch::Infinite);
        }
        let v: f64 = s.parse().map_err(|_| invalid(format!("cannot parse stretch `{s}`")))?;
        Stretch::new(v)
    }
}

impl Serialize for Stretch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Stretch::Finite(e) => s.serialize_f64(*e),
            Stretch::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Stretch {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        let parsed = match Repr::deserialize(d)? {
            Repr::Num(v) => Stretch::new(v),
            Repr::Text(t) => t.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_limits() {
        assert_eq!("inf".parse::<Stretch>().unwrap(), Stretch::Infinite);
        assert_eq!("0.5".parse::<Stretch>().unwrap(), Stretch::Finite(0.5));
        assert!("0".parse::<Stretch>().is_err());
        assert!("-1".parse::<Stretch>().is_err());
        assert_eq!(Stretch::Infinite.alpha(), 1.0);
        assert_eq!(Stretch::Infinite.omega(), 0.5);
        assert!((Stretch::Finite(1.0).alpha() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((Stretch::Finite(1.0).omega() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        for s in [Stretch::Infinite, Stretch::Finite(0.75)] {
            let j = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<Stretch>(&j).unwrap(), s);
        }
    }
}
