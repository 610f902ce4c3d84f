//! F2 cochains, coboundary and boundary maps, and cohomology ranks.

use serde::Serialize;

use super::bits::{BitVec, EchelonBasis, F2Matrix};
use crate::complex::{Rational, SimplicialComplex, WeightFunction};
use crate::error::{HdxError, Result};

/// A function on the i-cells with values in F2, stored as its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Cochain {
    pub dim: isize,
    pub support: BitVec,
}

impl F2Cochain {
    pub fn zero(x: &SimplicialComplex, dim: isize) -> Self {
        Self {
            dim,
            support: BitVec::zeros(x.count(dim)),
        }
    }

    pub fn ones(x: &SimplicialComplex, dim: isize) -> Self {
        Self {
            dim,
            support: BitVec::ones(x.count(dim)),
        }
    }

    /// Indicator of the listed i-cells (by index).
    pub fn indicator(x: &SimplicialComplex, dim: isize, cells: &[usize]) -> Self {
        Self {
            dim,
            support: BitVec::from_indices(x.count(dim), cells.iter().copied()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_zero()
    }

    pub fn add(&self, other: &F2Cochain) -> F2Cochain {
        assert_eq!(self.dim, other.dim);
        let mut s = self.support.clone();
        s.xor_assign(&other.support);
        F2Cochain {
            dim: self.dim,
            support: s,
        }
    }
}

fn check_dim(x: &SimplicialComplex, f: &F2Cochain) -> Result<()> {
    if f.dim < -1 || f.dim > x.dim() as isize || f.support.len() != x.count(f.dim) {
        return Err(HdxError::Dimension(format!(
            "cochain of dim {} with {} entries does not fit the complex",
            f.dim,
            f.support.len()
        )));
    }
    Ok(())
}

/// The matrix of δ_i : C^i → C^{i+1} over F2 (rows: (i+1)-cells, columns: i-cells).
pub fn coboundary_matrix(x: &SimplicialComplex, i: isize) -> Result<F2Matrix> {
    if i < -1 || i >= x.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "δ_{i} undefined on a {}-complex",
            x.dim()
        )));
    }
    let cols = x.count(i);
    let rows = (0..x.count(i + 1))
        .map(|j| BitVec::from_indices(cols, x.facets(i + 1, j).iter().copied()))
        .collect();
    Ok(F2Matrix::from_rows(cols, rows))
}

/// (δf)(F) = Σ_{G ⊂ F} f(G) mod 2.
pub fn delta(x: &SimplicialComplex, f: &F2Cochain) -> Result<F2Cochain> {
    check_dim(x, f)?;
    if f.dim >= x.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "δ_{} is undefined at the top dimension",
            f.dim
        )));
    }
    let i = f.dim;
    let mut out = BitVec::zeros(x.count(i + 1));
    for g in f.support.ones_iter() {
        for &c in x.cofaces(i, g) {
            out.flip(c);
        }
    }
    Ok(F2Cochain {
        dim: i + 1,
        support: out,
    })
}

/// ∂ on F2 chains: each i-cell maps to the sum of its facets. Vertices map to the empty face.
pub fn boundary(x: &SimplicialComplex, c: &F2Cochain) -> Result<F2Cochain> {
    check_dim(x, c)?;
    if c.dim < 0 {
        return Err(HdxError::Dimension(
            "∂ is undefined on the (-1)-chains".into(),
        ));
    }
    let i = c.dim;
    let mut out = BitVec::zeros(x.count(i - 1));
    for j in c.support.ones_iter() {
        for &g in x.facets(i, j) {
            out.flip(g);
        }
    }
    Ok(F2Cochain {
        dim: i - 1,
        support: out,
    })
}

/// Ranks of cocycles, coboundaries and cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCohomology {
    pub dim: isize,
    pub cells: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub betti: usize,
}

/// F2 cohomology of the augmented complex, degrees 0..=d (degree 0 is reduced).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn betti(&self, i: isize) -> usize {
        self.degrees
            .iter()
            .find(|d| d.dim == i)
            .map_or(0, |d| d.betti)
    }
}

/// rank δ_i over F2 for i in -1..d (δ_d = 0).
pub fn coboundary_rank(x: &SimplicialComplex, i: isize) -> usize {
    if i < -1 || i >= x.dim() as isize {
        return 0;
    }
    // rows of δ_i are the facet sets of the (i+1)-cells
    let mut basis = EchelonBasis::new(x.count(i));
    let mut rank = 0;
    let target = x.count(i);
    for j in 0..x.count(i + 1) {
        if basis.insert(BitVec::from_indices(
            x.count(i),
            x.facets(i + 1, j).iter().copied(),
        )) {
            rank += 1;
            if rank == target {
                break;
            }
        }
    }
    rank
}

pub fn betti_f2(x: &SimplicialComplex) -> CohomologyReport {
    let ranks: Vec<usize> = (-1..=x.dim() as isize)
        .map(|i| coboundary_rank(x, i))
        .collect();
    let degrees = (0..=x.dim() as isize)
        .map(|i| {
            let cells = x.count(i);
            let cocycles = cells - ranks[(i + 1) as usize];
            let coboundaries = ranks[i as usize];
            DegreeCohomology {
                dim: i,
                cells,
                cocycles,
                coboundaries,
                betti: cocycles - coboundaries,
            }
        })
        .collect();
    CohomologyReport { degrees }
}

/// True iff H^{d-1}(X, F2) = 0.
pub fn homologically_connected(x: &SimplicialComplex) -> bool {
    let d = x.dim() as isize;
    if d == 0 {
        // H^{-1} of the augmented complex vanishes as soon as there is a vertex
        return x.count(0) > 0;
    }
    let cells = x.count(d - 1);
    coboundary_rank(x, d - 1) + coboundary_rank(x, d - 2) == cells
}

/// ‖f‖ = Σ_{F ∈ supp f} w(F).
pub fn norm_w(weights: &WeightFunction, f: &F2Cochain) -> Rational {
    let nums = weights.numerators(f.dim);
    let num: u64 = f.support.ones_iter().map(|j| nums[j]).sum();
    Rational::new(num as i64, weights.denominator(f.dim) as i64)
}
