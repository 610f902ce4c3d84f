//! Exact coboundary and cosystolic expansion constants by exhaustive enumeration.
//!
//! Every minimization here runs over a quotient C^i / S with S = B^i (coboundaries) or
//! S = Z^i (cocycles). S is kept in fully reduced echelon form, so the vectors supported
//! off its pivot positions are one representative per coset. The outer loop walks those
//! representatives in Gray-code order (updating δ incrementally), the inner loop walks the
//! 2^{dim S} members of each coset to find its minimum weight. Total work is 2^{|X^(i)|}.
//!
//! Norms are accumulated as integer degree sums: in dimension i all weights share the
//! denominator C(d+1, i+1) |X^(d)|, so ratios are compared exactly by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::bits::{BitVec, EchelonBasis};
use super::cochain::{coboundary_matrix, F2Cochain};
use crate::complex::{Rational, SimplicialComplex, WeightFunction};
use crate::error::{HdxError, Result};

/// Default bound on |X^(i)| for exhaustive minimization.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 22;

/// Bits per lookup table chunk when summing weights of a mask.
const CHUNK: usize = 11;
/// Coset representatives handled per parallel task: 2^LOW_BITS.
const LOW_BITS: usize = 12;

/// An exact expansion constant; `Infinite` is the value of a minimum over an empty set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    Finite(Rational),
    Infinite,
}

impl Expansion {
    pub fn is_positive(&self) -> bool {
        match self {
            Expansion::Finite(r) => *r > Rational::from_integer(0),
            Expansion::Infinite => true,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Expansion::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Expansion::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Expansion::Finite(r) => Some(*r),
            Expansion::Infinite => None,
        }
    }
}

impl PartialOrd for Expansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Expansion::Finite(a), Expansion::Finite(b)) => a.cmp(b),
            (Expansion::Finite(_), Expansion::Infinite) => Ordering::Less,
            (Expansion::Infinite, Expansion::Finite(_)) => Ordering::Greater,
            (Expansion::Infinite, Expansion::Infinite) => Ordering::Equal,
        })
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Expansion::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which subspace a cochain is taken modulo.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    /// [f] = f + B^i
    Coboundaries,
    /// ⌈f⌉ = f + Z^i
    Cocycles,
}

/// Fully reduced basis of B^i (image of δ_{i-1}) in C^i.
pub fn coboundary_space(x: &SimplicialComplex, i: isize) -> Result<EchelonBasis> {
    let m = x.count(i);
    if i <= -1 {
        return Ok(EchelonBasis::new(m));
    }
    let d = coboundary_matrix(x, i - 1)?;
    // columns of δ_{i-1} are δ e_G for the (i-1)-cells G
    let t = d.transpose();
    Ok(EchelonBasis::from_vectors(m, t.rows().iter().cloned()))
}

/// Fully reduced basis of Z^i (kernel of δ_i) in C^i.
pub fn cocycle_space(x: &SimplicialComplex, i: isize) -> Result<EchelonBasis> {
    let m = x.count(i);
    if i >= x.dim() as isize {
        return Ok(EchelonBasis::from_vectors(
            m,
            (0..m).map(|j| BitVec::from_indices(m, [j])),
        ));
    }
    let d = coboundary_matrix(x, i)?;
    Ok(EchelonBasis::from_vectors(m, d.kernel()))
}

fn subspace(x: &SimplicialComplex, i: isize, q: Quotient) -> Result<EchelonBasis> {
    match q {
        Quotient::Coboundaries => coboundary_space(x, i),
        Quotient::Cocycles => cocycle_space(x, i),
    }
}

/// ‖f + S‖ = min over g in the coset of ‖g‖, by enumerating S when dim S ≤ `cap`.
pub fn coset_norm(
    x: &SimplicialComplex,
    f: &F2Cochain,
    quotient: Quotient,
    cap: usize,
) -> Result<Rational> {
    let w = x.weights()?;
    let s = subspace(x, f.dim, quotient)?;
    if s.rank() > cap {
        return Err(HdxError::ExactnessUnavailable {
            size: s.rank(),
            cap,
        });
    }
    let nums = w.numerators(f.dim);
    let weight = |v: &BitVec| -> u64 { v.ones_iter().map(|j| nums[j]).sum() };
    let mut g = f.support.clone();
    let mut best = weight(&g);
    for k in 1u64..(1u64 << s.rank()) {
        g.xor_assign(&s.vectors()[k.trailing_zeros() as usize]);
        best = best.min(weight(&g));
    }
    Ok(Rational::new(best as i64, w.denominator(f.dim) as i64))
}

/// Weight of a mask over i-cells via per-chunk lookup tables.
struct MaskWeights {
    tables: Vec<Vec<u64>>,
}

impl MaskWeights {
    fn new(nums: &[u64]) -> Self {
        let tables = nums
            .chunks(CHUNK)
            .map(|chunk| {
                let mut t = vec![0u64; 1 << chunk.len()];
                for m in 1..t.len() {
                    let low = m.trailing_zeros() as usize;
                    t[m] = t[m & (m - 1)] + chunk[low];
                }
                t
            })
            .collect();
        Self { tables }
    }

    #[inline]
    fn weight(&self, mask: u64) -> u64 {
        let mut total = 0;
        let mut m = mask;
        for t in &self.tables {
            total += t[(m as usize) & (t.len() - 1)];
            m >>= CHUNK;
        }
        total
    }
}

/// Best ratio found so far as (numerator degree sum of δf, degree sum of the coset minimum).
#[derive(Clone, Copy, Debug)]
struct Ratio {
    top: u64,
    bottom: u64,
}

fn better(a: Option<Ratio>, b: Option<Ratio>) -> Option<Ratio> {
    match (a, b) {
        (None, r) | (r, None) => r,
        (Some(p), Some(q)) => {
            // p.top/p.bottom vs q.top/q.bottom; bottom = 0 only occurs with top = 0
            let lhs = p.top as u128 * q.bottom.max(1) as u128;
            let rhs = q.top as u128 * p.bottom.max(1) as u128;
            Some(if rhs < lhs { q } else { p })
        }
    }
}

/// min over f ∉ S of ‖δf‖ / ‖f + S‖, exhaustively.
///
/// A coset whose δ vanishes contributes 0 (a non-trivial cocycle). A coset of weight zero
/// with non-zero δ (possible only on impure complexes) contributes +∞ and is skipped.
fn min_quotient_ratio(
    x: &SimplicialComplex,
    i: isize,
    quotient: Quotient,
    cap: usize,
) -> Result<Expansion> {
    if i < 0 || i >= x.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "expansion constants need 0 <= i < d = {}, got {i}",
            x.dim()
        )));
    }
    let m = x.count(i);
    if m > cap || m > 63 {
        return Err(HdxError::ExactnessUnavailable {
            size: m,
            cap: cap.min(63),
        });
    }
    let w = x.weights()?;
    let s = subspace(x, i, quotient)?;
    let pivots = s.pivots();
    let s_masks: Vec<u64> = s.vectors().iter().map(BitVec::to_mask).collect();
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(Expansion::Infinite);
    }
    let columns: Vec<BitVec> = {
        let delta = coboundary_matrix(x, i)?;
        let t = delta.transpose();
        t.rows().to_vec()
    };
    let low_weights = MaskWeights::new(w.numerators(i));
    let up_nums = w.numerators(i + 1);
    let up_weight = |v: &BitVec| -> u64 { v.ones_iter().map(|j| up_nums[j]).sum() };

    let coset_min = |rep: u64| -> u64 {
        let mut g = rep;
        let mut best = low_weights.weight(g);
        for k in 1u64..(1u64 << s_masks.len()) {
            g ^= s_masks[k.trailing_zeros() as usize];
            best = best.min(low_weights.weight(g));
        }
        best
    };

    let low = free.len().min(LOW_BITS);
    let high = free.len() - low;
    let n_up = x.count(i + 1);

    let best = (0u64..(1u64 << high))
        .into_par_iter()
        .map(|h| {
            let mut rep = 0u64;
            let mut image = BitVec::zeros(n_up);
            for b in 0..high {
                if (h >> b) & 1 == 1 {
                    let c = free[low + b];
                    rep ^= 1 << c;
                    image.xor_assign(&columns[c]);
                }
            }
            let mut local: Option<Ratio> = None;
            for k in 0u64..(1u64 << low) {
                if k > 0 {
                    let c = free[k.trailing_zeros() as usize];
                    rep ^= 1 << c;
                    image.xor_assign(&columns[c]);
                }
                if rep == 0 {
                    continue;
                }
                let cand = if image.is_zero() {
                    Ratio { top: 0, bottom: 0 }
                } else {
                    let bottom = coset_min(rep);
                    if bottom == 0 {
                        continue;
                    }
                    Ratio {
                        top: up_weight(&image),
                        bottom,
                    }
                };
                local = better(local, Some(cand));
                if local.is_some_and(|r| r.top == 0) {
                    break;
                }
            }
            local
        })
        .reduce(|| None, better);

    Ok(match best {
        None => Expansion::Infinite,
        Some(r) if r.top == 0 => Expansion::Finite(Rational::from_integer(0)),
        Some(r) => Expansion::Finite(ratio_value(&w, i, r)),
    })
}

fn ratio_value(w: &WeightFunction, i: isize, r: Ratio) -> Rational {
    // (top / D_{i+1}) / (bottom / D_i)
    let num = r.top as i128 * w.denominator(i) as i128;
    let den = r.bottom as i128 * w.denominator(i + 1) as i128;
    let g = gcd(num, den);
    Rational::new((num / g) as i64, (den / g) as i64)
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

/// The i-th coboundary expansion constant: min over f ∉ B^i of ‖δf‖ / ‖[f]‖.
/// `Infinite` when C^i = B^i.
pub fn coboundary_expansion(x: &SimplicialComplex, i: isize, cap: usize) -> Result<Expansion> {
    min_quotient_ratio(x, i, Quotient::Coboundaries, cap)
}

/// The cosystolic pair (μ_i, ν_i):
/// μ_i = min over f ∈ Z^i \ B^i of ‖f‖ (`Infinite` when H^i = 0),
/// ν_i = min over f ∉ Z^i of ‖δf‖ / ‖⌈f⌉‖.
pub fn cosystolic_constants(
    x: &SimplicialComplex,
    i: isize,
    cap: usize,
) -> Result<(Expansion, Expansion)> {
    let nu = min_quotient_ratio(x, i, Quotient::Cocycles, cap)?;
    let w = x.weights()?;
    let z = cocycle_space(x, i)?;
    let b = coboundary_space(x, i)?;
    let b_masks: Vec<(u64, u64)> = b
        .vectors()
        .iter()
        .map(|v| (1u64 << v.first_one().unwrap(), v.to_mask()))
        .collect();
    let z_masks: Vec<u64> = z.vectors().iter().map(BitVec::to_mask).collect();
    let weights = MaskWeights::new(w.numerators(i));
    let mut best: Option<u64> = None;
    let mut g = 0u64;
    for k in 1u64..(1u64 << z_masks.len()) {
        g ^= z_masks[k.trailing_zeros() as usize];
        // b is fully reduced: clearing pivots in any order gives the canonical residue
        let mut r = g;
        for &(p, v) in &b_masks {
            if r & p != 0 {
                r ^= v;
            }
        }
        if r != 0 {
            let wt = weights.weight(g);
            best = Some(best.map_or(wt, |b| b.min(wt)));
        }
    }
    let mu = match best {
        None => Expansion::Infinite,
        Some(num) => Expansion::Finite(Rational::new(num as i64, w.denominator(i) as i64)),
    };
    Ok((mu, nu))
}

/// A non-certified lower-bound style estimate from random cochains.
#[derive(Clone, Debug, Serialize)]
pub struct SampledEstimate {
    pub dim: isize,
    /// Minimum observed ratio; `None` if every sample fell in B^i.
    pub value: Option<f64>,
    pub samples: usize,
    pub certified: bool,
}

/// Samples random f ∈ C^i, lowers ‖f‖ greedily by adding generators δe_G of B^i, and
/// reports the smallest ‖δf‖ / ‖f‖ seen. Not a certificate of anything.
pub fn sampled_coboundary_estimate<R: Rng>(
    x: &SimplicialComplex,
    i: isize,
    samples: usize,
    rng: &mut R,
) -> Result<SampledEstimate> {
    if i < 0 || i >= x.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "no coboundary expansion in degree {i}"
        )));
    }
    let w = x.weights()?;
    let m = x.count(i);
    let b = coboundary_space(x, i)?;
    let generators: Vec<BitVec> = if i == 0 {
        vec![BitVec::ones(m)]
    } else {
        coboundary_matrix(x, i - 1)?.transpose().rows().to_vec()
    };
    let nums = w.numerators(i);
    let weight = |v: &BitVec| -> u64 { v.ones_iter().map(|j| nums[j]).sum() };
    let mut best: Option<f64> = None;
    for _ in 0..samples {
        let mut f = BitVec::zeros(m);
        for j in 0..m {
            if rng.gen::<bool>() {
                f.set(j, true);
            }
        }
        if b.contains(&f) {
            continue;
        }
        let mut wt = weight(&f);
        loop {
            let mut improved = false;
            for g in &generators {
                let mut h = f.clone();
                h.xor_assign(g);
                let hw = weight(&h);
                if hw < wt {
                    f = h;
                    wt = hw;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let df = super::cochain::delta(x, &F2Cochain { dim: i, support: f })?;
        let top = weight_up(&w, i, &df.support);
        if wt == 0 {
            continue;
        }
        let ratio =
            (top as f64 / w.denominator(i + 1) as f64) / (wt as f64 / w.denominator(i) as f64);
        best = Some(best.map_or(ratio, |b: f64| b.min(ratio)));
    }
    Ok(SampledEstimate {
        dim: i,
        value: best,
        samples,
        certified: false,
    })
}

fn weight_up(w: &WeightFunction, i: isize, v: &BitVec) -> u64 {
    let nums = w.numerators(i + 1);
    v.ones_iter().map(|j| nums[j]).sum()
}
