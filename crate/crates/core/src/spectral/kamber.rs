//! The p-parameter of an eigenvalue bound and decay of lifted averages on the tree.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::graph::Graph;
use crate::error::{HdxError, Result};

/// Relative slack at the ends of [2√q, q+1].
const RANGE_SLACK: f64 = 1e-12;
/// Absolute precision of 1/p in [`solve_p`].
const BISECTION_TOL: f64 = 1e-12;
/// Relative tolerance of the L²_00 projections.
const PROJECTION_TOL: f64 = 1e-9;
/// Averages below this magnitude are dropped from the decay fit.
const UNDERFLOW: f64 = 1e-13;

/// The unique p ∈ [2, ∞] with λ = q^{1/p} + q^{(p-1)/p}. Returns `f64::INFINITY` at λ = q+1.
pub fn solve_p(lambda: f64, q: f64) -> Result<f64> {
    if q.is_nan() || q <= 1.0 || !lambda.is_finite() {
        return Err(HdxError::Range(format!(
            "need q > 1 and finite λ, got λ={lambda}, q={q}"
        )));
    }
    let lo = 2.0 * q.sqrt();
    let hi = q + 1.0;
    if lambda < lo * (1.0 - RANGE_SLACK) || lambda > hi * (1.0 + RANGE_SLACK) {
        return Err(HdxError::Range(format!(
            "λ = {lambda} outside [2√q, q+1] = [{lo}, {hi}]"
        )));
    }
    if lambda <= lo * (1.0 + RANGE_SLACK) {
        return Ok(2.0);
    }
    if lambda >= hi * (1.0 - RANGE_SLACK) {
        return Ok(f64::INFINITY);
    }
    // g(s) = q^s + q^{1-s} decreases from q+1 at s=0 to 2√q at s=1/2
    let g = |s: f64| q.powf(s) + q.powf(1.0 - s);
    let (mut a, mut b) = (0.0f64, 0.5f64);
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        if g(m) > lambda {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(1.0 / (0.5 * (a + b)))
}

/// Irreducible affine Weyl group types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AffineType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl FromStr for AffineType {
    type Err = HdxError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => AffineType::A,
            "B" => AffineType::B,
            "C" => AffineType::C,
            "D" => AffineType::D,
            "E6" => AffineType::E6,
            "E7" => AffineType::E7,
            "E8" => AffineType::E8,
            "F4" => AffineType::F4,
            "G2" => AffineType::G2,
            _ => return Err(HdxError::UnknownType(s.to_string())),
        })
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// p(G) for the affine type with the given rank. The exceptional types take their fixed rank.
pub fn weyl_p(ty: AffineType, rank: usize) -> Result<u32> {
    let n = rank as u32;
    let bad = || HdxError::UnknownType(format!("{ty}{rank}"));
    let min_rank = match ty {
        AffineType::A => 1,
        AffineType::B => 3,
        AffineType::C => 2,
        AffineType::D => 4,
        AffineType::E6 => 6,
        AffineType::E7 => 7,
        AffineType::E8 => 8,
        AffineType::F4 => 4,
        AffineType::G2 => 2,
    };
    let fixed = matches!(
        ty,
        AffineType::E6 | AffineType::E7 | AffineType::E8 | AffineType::F4 | AffineType::G2
    );
    if rank < min_rank || (fixed && rank != min_rank) {
        return Err(bad());
    }
    Ok(match ty {
        AffineType::A | AffineType::B | AffineType::C => 2 * n,
        AffineType::D if n.is_multiple_of(2) => 2 * (n - 1),
        AffineType::D => 2 * n,
        AffineType::E6 => 16,
        AffineType::E7 => 18,
        AffineType::E8 => 29,
        AffineType::F4 => 11,
        AffineType::G2 => 6,
    })
}

/// Parses symbols such as "A2", "D4" or "G2" and looks them up.
pub fn weyl_p_symbol(symbol: &str) -> Result<u32> {
    let s = symbol.trim().to_ascii_uppercase();
    let split = s
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| HdxError::UnknownType(symbol.into()))?;
    let (letter, digits) = s.split_at(split);
    let rank: usize = digits
        .parse()
        .map_err(|_| HdxError::UnknownType(symbol.into()))?;
    let ty = match letter {
        "E" | "F" | "G" => s.parse::<AffineType>()?,
        _ => letter.parse::<AffineType>()?,
    };
    weyl_p(ty, rank)
}

/// Spherical averages of a lifted function on the universal cover, with a decay fit.
#[derive(Clone, Debug, Serialize)]
pub struct LiftDecay {
    pub q: usize,
    /// f̃(r) for r = 0..=R.
    pub averages: Vec<f64>,
    /// α in log_q |f̃(r)| ≈ c - αr; `None` with fewer than two usable radii.
    pub alpha: Option<f64>,
    /// Radii used in the fit.
    pub window: (usize, usize),
}

/// Lifts `f` to the (q+1)-regular tree covering `g` and averages it over spheres around a
/// lift of `base`, out to radius `radius`.
///
/// Walks non-backtracking paths from `base`, merging paths that end in the same directed
/// edge. Each path carries weight 1/|S_r|, so the sum over paths of weight · f(endpoint)
/// is the sphere average.
pub fn lift_decay_profile(g: &Graph, f: &[f64], base: usize, radius: usize) -> Result<LiftDecay> {
    let k = g.regular_degree().ok_or(HdxError::Regularity)?;
    if k < 3 {
        return Err(HdxError::Range(format!(
            "the tree must branch: degree {k} < 3"
        )));
    }
    if f.len() != g.n() {
        return Err(HdxError::Dimension(format!(
            "{} values for {} vertices",
            f.len(),
            g.n()
        )));
    }
    if base >= g.n() {
        return Err(HdxError::Index {
            vertex: base,
            n: g.n(),
        });
    }
    check_l2_00(g, f)?;
    let q = k - 1;

    let mut averages = vec![f[base]];
    // states indexed by directed edge (prev -> cur), as (prev, cur, weight)
    let mut layer: Vec<(usize, usize, f64)> = g
        .neighbors(base)
        .iter()
        .map(|&w| (base, w, 1.0 / k as f64))
        .collect();
    for r in 1..=radius {
        averages.push(layer.iter().map(|&(_, v, w)| w * f[v]).sum());
        if r == radius {
            break;
        }
        let mut next: std::collections::HashMap<(usize, usize), f64> =
            std::collections::HashMap::new();
        for &(u, v, w) in &layer {
            for &x in g.neighbors(v) {
                if x != u {
                    *next.entry((v, x)).or_insert(0.0) += w / q as f64;
                }
            }
        }
        let mut states: Vec<(usize, usize, f64)> =
            next.into_iter().map(|((a, b), w)| (a, b, w)).collect();
        states.sort_by_key(|&(a, b, _)| (a, b));
        layer = states;
    }

    let window = (1.min(radius), radius);
    let points: Vec<(f64, f64)> = (window.0..=window.1)
        .filter(|&r| r > 0 && averages[r].abs() >= UNDERFLOW)
        .map(|r| (r as f64, averages[r].abs().ln() / (q as f64).ln()))
        .collect();
    Ok(LiftDecay {
        q,
        averages,
        alpha: fit_slope(&points).map(|s| -s),
        window,
    })
}

fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// f must sum to zero on each side of the bipartition (on all of V when not bipartite).
fn check_l2_00(g: &Graph, f: &[f64]) -> Result<()> {
    let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    let scale = norm.max(1.0) * (g.n() as f64).sqrt();
    let sides = g.bipartition().unwrap_or_else(|| vec![false; g.n()]);
    let mut sums = [0.0f64; 2];
    for (v, &s) in sides.iter().enumerate() {
        sums[s as usize] += f[v];
    }
    let worst = sums[0].abs().max(sums[1].abs());
    if worst > PROJECTION_TOL * scale {
        return Err(HdxError::NotInL200(worst));
    }
    Ok(())
}
