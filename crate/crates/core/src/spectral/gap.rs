//! Spectral gaps of the upper Laplacians and the weighted Hodge decomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::operators::{
    column_space_basis, least_squares, numerical_rank, orthogonal_complement, signed_coboundary,
    sorted_eigenvalues, OperatorBundle, RealCochain,
};
use crate::complex::SimplicialComplex;
use crate::error::{HdxError, Result};

/// Absolute slack used when comparing computed eigenvalues to thresholds.
pub const EIGEN_TOL: f64 = 1e-9;

/// λ^(i) = min spec(Δ^up_i restricted to (B^i)^⊥).
///
/// Returns +∞ when (B^i)^⊥ = 0.
pub fn spectral_gap(x: &SimplicialComplex, i: isize) -> Result<f64> {
    let ops = OperatorBundle::assemble(x)?;
    spectral_gap_with(&ops, i)
}

pub fn spectral_gap_with(ops: &OperatorBundle, i: isize) -> Result<f64> {
    if i < -1 || i > ops.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "λ^({i}) of a {}-complex",
            ops.dim()
        )));
    }
    let q = coboundary_complement(ops, i);
    if q.ncols() == 0 {
        return Ok(f64::INFINITY);
    }
    let restricted = q.transpose() * ops.symmetric_up(i) * &q;
    Ok(sorted_eigenvalues(&restricted)[0].max(0.0))
}

/// All gaps λ^(0), ..., λ^(d-1).
pub fn spectral_gaps(x: &SimplicialComplex) -> Result<Vec<f64>> {
    let ops = OperatorBundle::assemble(x)?;
    (0..x.dim() as isize)
        .map(|i| spectral_gap_with(&ops, i))
        .collect()
}

/// Orthonormal basis (symmetric coordinates) of (B^i)^⊥ = ker δ*_{i-1}.
fn coboundary_complement(ops: &OperatorBundle, i: isize) -> DMatrix<f64> {
    if i == -1 {
        return DMatrix::identity(1, 1);
    }
    orthogonal_complement(&column_space_basis(&ops.symmetric_delta(i - 1)))
}

/// Whether λ^(i) ≥ ε for every i in 0..d, up to [`EIGEN_TOL`].
pub fn is_spectral_expander(x: &SimplicialComplex, eps: f64) -> Result<bool> {
    Ok(spectral_gaps(x)?.iter().all(|&g| g >= eps - EIGEN_TOL))
}

/// f = b + h + b' with b ∈ B^i, h harmonic, b' ∈ im δ*_i, plus checks of the result.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub coboundary: RealCochain,
    pub harmonic: RealCochain,
    pub co_coboundary: RealCochain,
    /// c with b = δ_{i-1} c.
    pub coboundary_preimage: DVector<f64>,
    /// e with b' = δ*_i e.
    pub co_coboundary_preimage: DVector<f64>,
    pub residuals: HodgeResiduals,
}

/// Every entry should be at round-off level.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HodgeResiduals {
    /// Weighted norm of f - b - h - b'.
    pub reconstruction: f64,
    /// max |⟨·,·⟩| over the three pairs, relative to ‖f‖².
    pub orthogonality: f64,
    /// ‖Δ_i h‖ / ‖f‖.
    pub harmonicity: f64,
}

pub fn hodge_decompose(x: &SimplicialComplex, f: &RealCochain) -> Result<HodgeDecomposition> {
    let ops = OperatorBundle::assemble(x)?;
    let i = f.dim;
    if i < 0 || i > x.dim() as isize {
        return Err(HdxError::Dimension(format!(
            "no Hodge decomposition in degree {i}"
        )));
    }
    if f.values.len() != ops.cells(i) {
        return Err(HdxError::Dimension(format!(
            "cochain has {} values, X^({i}) has {} cells",
            f.values.len(),
            ops.cells(i)
        )));
    }
    let u = ops.to_symmetric(i, &f.values);

    // b = δ_{i-1} c, solved in symmetric coordinates as B y = P_B u
    let bm = ops.symmetric_delta(i - 1);
    let y = least_squares(&bm, &u);
    let c = y.component_div(&ops.degree_weights(i - 1).map(f64::sqrt));
    let b = ops.delta(i - 1) * &c;

    // b' = δ*_i e, with Aᵀ z = P_{im Aᵀ} u and e = D_{i+1}^{-1/2} z
    let am = ops.symmetric_delta(i);
    let (bp, e) = if am.nrows() == 0 {
        (DVector::zeros(u.len()), DVector::zeros(0))
    } else {
        let z = least_squares(&am.transpose(), &u);
        let e = z.component_div(&ops.degree_weights(i + 1).map(f64::sqrt));
        (ops.delta_adjoint(i) * &e, e)
    };

    let h = &f.values - &b - &bp;
    let fnorm2 = ops.inner(i, &f.values, &f.values).max(f64::MIN_POSITIVE);
    let rest = &f.values - &b - &h - &bp;
    let orth = [
        ops.inner(i, &b, &h),
        ops.inner(i, &b, &bp),
        ops.inner(i, &h, &bp),
    ]
    .iter()
    .fold(0.0f64, |m, v| m.max(v.abs()))
        / fnorm2;
    let lap_h = ops.laplacian(i)? * &h;
    let harmonicity = ops.inner(i, &lap_h, &lap_h).sqrt() / fnorm2.sqrt();
    Ok(HodgeDecomposition {
        coboundary: RealCochain { dim: i, values: b },
        harmonic: RealCochain { dim: i, values: h },
        co_coboundary: RealCochain { dim: i, values: bp },
        coboundary_preimage: c,
        co_coboundary_preimage: e,
        residuals: HodgeResiduals {
            reconstruction: ops.inner(i, &rest, &rest).sqrt(),
            orthogonality: orth,
            harmonicity,
        },
    })
}

/// β_i(X, ℝ) for i = 0..=d (reduced in degree 0), from numerical ranks of the
/// unweighted coboundary matrices.
pub fn real_betti(x: &SimplicialComplex) -> Vec<usize> {
    let d = x.dim() as isize;
    let rank = |i: isize| -> usize {
        if i < -1 || i >= d {
            0
        } else {
            numerical_rank(&signed_coboundary(x, i))
        }
    };
    (0..=d)
        .map(|i| x.count(i) - rank(i) - rank(i - 1))
        .collect()
}

/// Eigenvalues of Δ^up_i (all of them, ascending).
pub fn up_spectrum(x: &SimplicialComplex, i: isize) -> Result<Vec<f64>> {
    let ops = OperatorBundle::assemble(x)?;
    Ok(sorted_eigenvalues(&ops.symmetric_up(i)))
}

/// dim ker Δ_i, counting eigenvalues of magnitude at most [`EIGEN_TOL`].
pub fn harmonic_dimension(x: &SimplicialComplex, i: isize) -> Result<usize> {
    let ops = OperatorBundle::assemble(x)?;
    let l = ops.symmetric_laplacian(i);
    Ok(SymmetricEigen::new(l)
        .eigenvalues
        .iter()
        .filter(|v| v.abs() <= EIGEN_TOL)
        .count())
}
