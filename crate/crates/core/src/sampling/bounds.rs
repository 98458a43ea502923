use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use super::grid::{ceil_count, layered_count};
use super::Stretch;
use crate::error::{invalid, Result};

/// Parameters of a sample-size query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsQuery {
    pub epsilon: Stretch,
    pub delta: f64,
    pub dim: usize,
}

impl BoundsQuery {
    pub fn new(epsilon: Stretch, delta: f64, dim: usize) -> Result<Self> {
        let q = BoundsQuery { epsilon, delta, dim };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(invalid(format!("delta must lie in (0, 0.5), got {}", self.delta)));
        }
        if self.dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.epsilon.alpha()
    }

    pub fn omega(&self) -> f64 {
        self.epsilon.omega()
    }
}

/// Staggered grid size for cover radius `factor·δ` and margin `δ`.
///
/// At ε = ∞ the count is the limit of the finite-ε counts: the ceiling
/// argument decreases towards its ∞ value, so an exact integer there resolves
/// upwards.
fn grid_size(q: &BoundsQuery, factor: f64) -> Result<u128> {
    q.validate()?;
    let d = q.dim as f64;
    let x = (1.0 - 2.0 * q.delta) * d.sqrt() / (8f64.sqrt() * factor * q.delta);
    let m = ceil_count(x, q.epsilon.is_infinite());
    layered_count(m, q.dim).ok_or_else(|| invalid("sample count overflows u128"))
}

/// Size of the single-robot staggered grid `X_{αδ,δ}`. At ε = ∞ this may
/// exceed the point count of an explicit grid with β = δ by one layer.
pub fn size_curr(q: &BoundsQuery) -> Result<u128> {
    grid_size(q, q.alpha())
}

/// Size of the multi-robot staggered grid `X_{ωδ,δ}`.
pub fn multi_robot_sample_count(q: &BoundsQuery) -> Result<u128> {
    grid_size(q, q.omega())
}

/// Packing-based sufficient sample count of the earlier covering construction:
/// `V_d^{-1} (2(1−(2−α)δ)/(αδ))^d` with `V_d` the unit-ball volume.
pub fn size_prev(q: &BoundsQuery) -> Result<f64> {
    q.validate()?;
    let a = q.alpha();
    let d = q.dim as f64;
    let ratio = 2.0 * (1.0 - (2.0 - a) * q.delta) / (a * q.delta);
    Ok((libm::lgamma(d / 2.0 + 1.0) - d / 2.0 * PI.ln() + d * ratio.ln()).exp())
}

/// Stirling-approximated form of [`size_prev`]:
/// `√(πd) (√(2d/(πe)) (1−(2−α)δ)/(αδ))^d`.
pub fn size_prev_stirling(q: &BoundsQuery) -> Result<f64> {
    q.validate()?;
    let a = q.alpha();
    let d = q.dim as f64;
    let base = (2.0 * d / (PI * E)).sqrt() * (1.0 - (2.0 - a) * q.delta) / (a * q.delta);
    Ok((PI * d).sqrt() * base.powf(d))
}

fn check_lower_bound(q: &BoundsQuery) -> Result<()> {
    q.validate()?;
    if !q.epsilon.is_infinite() {
        return Err(invalid("the lower bound is only defined for epsilon = inf"));
    }
    if q.dim < 2 {
        return Err(invalid("the lower bound needs d >= 2"));
    }
    Ok(())
}

/// Necessary sample count for ε = ∞:
/// `Γ((d+1)/2) / (2π^{(d+1)/2}) · L^{d−2} (L−2δ)² / δ^d` with `L = 1−2δ`.
pub fn size_lower_bound(q: &BoundsQuery) -> Result<f64> {
    check_lower_bound(q)?;
    let d = q.dim as f64;
    let l = 1.0 - 2.0 * q.delta;
    let inner = l - 2.0 * q.delta;
    if inner <= 0.0 {
        return Ok(0.0);
    }
    let log =
        libm::lgamma((d + 1.0) / 2.0) - (2.0 * PI.powf((d + 1.0) / 2.0)).ln() + (d - 2.0) * l.ln() + 2.0 * inner.ln()
            - d * q.delta.ln();
    Ok(log.exp())
}

/// Stirling-approximated form of [`size_lower_bound`]:
/// `√(e/2) (1−2δ/(1−2δ))² (√((d−1)/(2πe)) (1−2δ)/δ)^d`.
pub fn size_lower_bound_stirling(q: &BoundsQuery) -> Result<f64> {
    check_lower_bound(q)?;
    let d = q.dim as f64;
    let l = 1.0 - 2.0 * q.delta;
    let shrink = 1.0 - 2.0 * q.delta / l;
    let base = ((d - 1.0) / (2.0 * PI * E)).sqrt() * l / q.delta;
    Ok((E / 2.0).sqrt() * shrink * shrink * base.powf(d))
}

/// Limits of `size_prev / size_curr` and `size_curr / size_lower_bound` as δ, ε → 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRatios {
    pub prev_over_curr: f64,
    pub curr_over_lb: f64,
}

pub fn asymptotic_ratios(dim: usize) -> Result<AsymptoticRatios> {
    if dim < 2 {
        return Err(invalid("asymptotic ratios need d >= 2"));
    }
    let d = dim as f64;
    Ok(AsymptoticRatios {
        prev_over_curr: (PI * d).sqrt() / 2.0 * (16.0 / (PI * E)).powf(d / 2.0),
        curr_over_lb: (8.0 / E).sqrt() * (d / (d - 1.0)).powf(d / 2.0) * (PI * E / 4.0).powf(d / 2.0),
    })
}

/// Table rendering: the ceiling as an integer below 10⁴, otherwise three
/// significant figures in scientific notation (`1.99e4`).
pub fn display_count(value: f64) -> String {
    let c = value.ceil();
    if c < 1e4 {
        return format!("{}", c as u64);
    }
    let mut exp = c.log10().floor() as i32;
    let mut mantissa = (c / 10f64.powi(exp) * 100.0).round() / 100.0;
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exp += 1;
    }
    format!("{mantissa:.2}e{exp}")
}

/// One row of a bounds table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub delta: f64,
    pub d: usize,
    pub epsilon: Stretch,
    pub lb: f64,
    pub curr: u128,
    pub prev: f64,
}

/// Rows for every combination of the given parameters. The lower bound does
/// not depend on ε and is repeated on every row.
pub fn bounds_table(deltas: &[f64], epsilons: &[Stretch], dims: &[usize]) -> Result<Vec<BoundsRow>> {
    if deltas.is_empty() || epsilons.is_empty() || dims.is_empty() {
        return Err(invalid("bounds table needs at least one delta, epsilon and dimension"));
    }
    let mut rows = Vec::new();
    for &delta in deltas {
        for &d in dims {
            let lb = size_lower_bound(&BoundsQuery::new(Stretch::Infinite, delta, d)?)?;
            for &epsilon in epsilons {
                let q = BoundsQuery::new(epsilon, delta, d)?;
                rows.push(BoundsRow { delta, d, epsilon, lb, curr: size_curr(&q)?, prev: size_prev(&q)? });
            }
        }
    }
    Ok(rows)
}

/// The parameter grid δ ∈ {0.25, 0.1, 0.05, 0.01}, d ∈ 2..=6, ε ∈ {∞, 1, 0.25, 0.1}.
pub fn table1() -> Vec<BoundsRow> {
    let eps = [Stretch::Infinite, Stretch::Finite(1.0), Stretch::Finite(0.25), Stretch::Finite(0.1)];
    bounds_table(&[0.25, 0.1, 0.05, 0.01], &eps, &[2, 3, 4, 5, 6]).expect("fixed grid is valid")
}
