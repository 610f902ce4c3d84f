//! Real cochain operators under the degree-weighted inner product
//! ⟨f, g⟩ = Σ deg(F) f(F) g(F).
//!
//! Everything is stored densely. Eigenproblems are solved in "symmetric coordinates"
//! u = D^{1/2} f, where the weighted adjoint becomes the ordinary transpose:
//! δ_i turns into A_i = D_{i+1}^{1/2} δ_i D_i^{-1/2} and Δ^up_i into A_iᵀ A_i.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::complex::SimplicialComplex;
use crate::error::{HdxError, Result};

/// Singular values below this fraction of the largest count as zero. Singular values come
/// from eigenvalues of a Gram matrix, which carry absolute error ~ε·σ_max², so the cutoff
/// sits well above √ε.
pub const RANK_RTOL: f64 = 1e-5;

/// A real-valued function on the i-cells.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCochain {
    pub dim: isize,
    pub values: DVector<f64>,
}

impl RealCochain {
    pub fn new(dim: isize, values: Vec<f64>) -> Self {
        Self {
            dim,
            values: DVector::from_vec(values),
        }
    }
}

/// δ_i, δ*_i and the Laplacians of a pure complex, for i = -1..=d.
#[derive(Clone, Debug)]
pub struct OperatorBundle {
    d: usize,
    /// `deltas[i + 1]` = δ_i as a |X^(i+1)| × |X^(i)| matrix with entries [F:G]; i < d.
    deltas: Vec<DMatrix<f64>>,
    /// `degrees[i + 1]` = diagonal of D_i.
    degrees: Vec<DVector<f64>>,
}

fn slot(i: isize) -> usize {
    (i + 1) as usize
}

impl OperatorBundle {
    pub fn assemble(x: &SimplicialComplex) -> Result<Self> {
        x.require_pure()?;
        let d = x.dim();
        let deltas = (-1..d as isize).map(|i| signed_coboundary(x, i)).collect();
        let degrees = (-1..=d as isize)
            .map(|i| DVector::from_iterator(x.count(i), x.degrees(i).iter().map(|&v| v as f64)))
            .collect();
        Ok(Self { d, deltas, degrees })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn check(&self, i: isize) -> Result<()> {
        if i < -1 || i > self.d as isize {
            return Err(HdxError::Dimension(format!("no cochains in degree {i}")));
        }
        Ok(())
    }

    pub fn cells(&self, i: isize) -> usize {
        self.degrees[slot(i)].len()
    }

    pub fn degree_weights(&self, i: isize) -> &DVector<f64> {
        &self.degrees[slot(i)]
    }

    /// δ_i : C^i → C^{i+1}; the zero map at the top degree.
    pub fn delta(&self, i: isize) -> DMatrix<f64> {
        if i >= self.d as isize || i < -1 {
            let rows = if i < self.d as isize && i + 1 >= -1 {
                self.cells(i + 1)
            } else {
                0
            };
            let cols = if i >= -1 && i <= self.d as isize {
                self.cells(i)
            } else {
                0
            };
            return DMatrix::zeros(rows, cols);
        }
        self.deltas[slot(i)].clone()
    }

    /// δ*_i : C^{i+1} → C^i, (δ*f)(G) = (1/deg G) Σ_F [F:G] deg(F) f(F).
    pub fn delta_adjoint(&self, i: isize) -> DMatrix<f64> {
        let delta = self.delta(i);
        let mut adj = delta.transpose();
        if adj.nrows() == 0 || adj.ncols() == 0 {
            return adj;
        }
        let lower = self.degree_weights(i);
        let upper = self.degree_weights(i + 1);
        for r in 0..adj.nrows() {
            for c in 0..adj.ncols() {
                adj[(r, c)] *= upper[c] / lower[r];
            }
        }
        adj
    }

    pub fn up(&self, i: isize) -> Result<DMatrix<f64>> {
        self.check(i)?;
        Ok(self.delta_adjoint(i) * self.delta(i))
    }

    pub fn down(&self, i: isize) -> Result<DMatrix<f64>> {
        self.check(i)?;
        if i == -1 {
            return Ok(DMatrix::zeros(1, 1));
        }
        Ok(self.delta(i - 1) * self.delta_adjoint(i - 1))
    }

    pub fn laplacian(&self, i: isize) -> Result<DMatrix<f64>> {
        Ok(self.up(i)? + self.down(i)?)
    }

    pub fn inner(&self, i: isize, f: &DVector<f64>, g: &DVector<f64>) -> f64 {
        self.degree_weights(i)
            .iter()
            .zip(f.iter().zip(g.iter()))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    /// A_i = D_{i+1}^{1/2} δ_i D_i^{-1/2}.
    pub fn symmetric_delta(&self, i: isize) -> DMatrix<f64> {
        let mut a = self.delta(i);
        if a.nrows() == 0 || a.ncols() == 0 {
            return a;
        }
        let lower = self.degree_weights(i);
        let upper = self.degree_weights(i + 1);
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                a[(r, c)] *= (upper[r] / lower[c]).sqrt();
            }
        }
        a
    }

    /// Δ^up_i in symmetric coordinates, A_iᵀ A_i.
    pub fn symmetric_up(&self, i: isize) -> DMatrix<f64> {
        let a = self.symmetric_delta(i);
        if a.nrows() == 0 {
            return DMatrix::zeros(self.cells(i), self.cells(i));
        }
        a.transpose() * a
    }

    /// Δ_i in symmetric coordinates.
    pub fn symmetric_laplacian(&self, i: isize) -> DMatrix<f64> {
        let mut l = self.symmetric_up(i);
        if i > -1 {
            let b = self.symmetric_delta(i - 1);
            l += &b * b.transpose();
        }
        l
    }

    pub fn to_symmetric(&self, i: isize, f: &DVector<f64>) -> DVector<f64> {
        f.component_mul(&self.degree_weights(i).map(f64::sqrt))
    }

    pub fn from_symmetric(&self, i: isize, u: &DVector<f64>) -> DVector<f64> {
        u.component_div(&self.degree_weights(i).map(f64::sqrt))
    }
}

/// δ_i with signed incidences: row F has (-1)^l at the facet obtained by deleting position l.
pub fn signed_coboundary(x: &SimplicialComplex, i: isize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(x.count(i + 1), x.count(i));
    for r in 0..x.count(i + 1) {
        for (pos, &c) in x.facets(i + 1, r).iter().enumerate() {
            m[(r, c)] = if pos % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    m
}

/// Eigenpairs of the Gram matrix g (σ² and singular vectors) whose σ exceeds the cutoff.
///
/// nalgebra's SVD can return an inaccurate factorization for rank-deficient input, while
/// its symmetric eigensolver is reliable, so singular data is read off mᵀm or m mᵀ.
fn significant_eigenpairs(g: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = g.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(g);
    let max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..n)
        .filter(|&k| max > 0.0 && eig.eigenvalues[k] > RANK_RTOL * RANK_RTOL * max)
        .collect();
    let values = keep.iter().map(|&k| eig.eigenvalues[k]).collect();
    (
        values,
        DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])]),
    )
}

/// Numerical rank with singular-value cutoff `RANK_RTOL * σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let g = if m.nrows() <= m.ncols() {
        m * m.transpose()
    } else {
        m.transpose() * m
    };
    significant_eigenpairs(g).0.len()
}

/// Orthonormal basis (columns) of the column space of `m`.
pub fn column_space_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    significant_eigenpairs(m * m.transpose()).1
}

/// Minimum-norm least-squares solution of m y = rhs, with the same cutoff as
/// [`numerical_rank`].
pub fn least_squares(m: &DMatrix<f64>, rhs: &DVector<f64>) -> DVector<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DVector::zeros(m.ncols());
    }
    // y = Σ v_k (v_kᵀ mᵀ rhs) / σ_k² over the retained right singular vectors
    let (values, v) = significant_eigenpairs(m.transpose() * m);
    let mut coeffs = v.transpose() * (m.transpose() * rhs);
    for (c, s2) in coeffs.iter_mut().zip(&values) {
        *c /= s2;
    }
    v * coeffs
}

/// Orthonormal basis (columns) of the orthogonal complement of span(q), where q has
/// orthonormal columns. Obtained as the unit eigenspace of I - q qᵀ.
pub fn orthogonal_complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    if q.ncols() == 0 {
        return DMatrix::identity(n, n);
    }
    let p = DMatrix::identity(n, n) - q * q.transpose();
    let eig = SymmetricEigen::new(p);
    let keep: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])])
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Face;

    fn idx(x: &SimplicialComplex, v: &[u32]) -> usize {
        x.face_index(&Face::new(v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn adjoint_on_triangle_graph() {
        let k3 = SimplicialComplex::complete(3, 1).unwrap();
        let ops = OperatorBundle::assemble(&k3).unwrap();
        let mut f = DVector::zeros(3);
        f[idx(&k3, &[0, 1])] = 1.0;
        let g = ops.delta_adjoint(0) * f;
        assert!((g[0] + 0.5).abs() < 1e-15);
        assert!((g[1] - 0.5).abs() < 1e-15);
        assert!(g[2].abs() < 1e-15);
    }

    #[test]
    fn up_laplacian_of_regular_graph_is_identity_minus_markov() {
        let petersen_edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 4),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ];
        let faces: Vec<Vec<u32>> = petersen_edges.iter().map(|&(a, b)| vec![a, b]).collect();
        let x = SimplicialComplex::from_maximal_faces(10, &faces).unwrap();
        let ops = OperatorBundle::assemble(&x).unwrap();
        let up = ops.up(0).unwrap();
        for a in 0..10 {
            for b in 0..10 {
                let adj = petersen_edges
                    .iter()
                    .any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b));
                let expected = if a == b {
                    1.0
                } else if adj {
                    -1.0 / 3.0
                } else {
                    0.0
                };
                assert!((up[(a as usize, b as usize)] - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn adjoints_compose_to_zero() {
        let x = SimplicialComplex::complete(6, 3).unwrap();
        let ops = OperatorBundle::assemble(&x).unwrap();
        for i in -1..2isize {
            let dd = ops.delta(i + 1) * ops.delta(i);
            assert!(dd.abs().max() <= 1e-12);
            let aa = ops.delta_adjoint(i) * ops.delta_adjoint(i + 1);
            assert!(aa.abs().max() <= 1e-12);
        }
    }

    #[test]
    fn impure_complex_is_rejected() {
        let g = SimplicialComplex::from_faces(3, 1, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            OperatorBundle::assemble(&g),
            Err(HdxError::NotPure(_))
        ));
    }

    #[test]
    fn ranks_and_complements() {
        let m = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
        assert_eq!(numerical_rank(&m), 1);
        let q = column_space_basis(&m);
        assert_eq!(q.ncols(), 1);
        let c = orthogonal_complement(&q);
        assert_eq!(c.ncols(), 2);
        assert!((q.transpose() * &c).abs().max() < 1e-12);
    }

    #[test]
    fn least_squares_on_rank_deficient_coboundary() {
        // this complex made an SVD-based solver return residuals of order 1e-2
        let faces: Vec<Vec<u32>> = [
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 7],
            [1, 3, 5],
            [1, 3, 6],
            [1, 3, 7],
            [1, 4, 7],
            [1, 4, 8],
            [1, 5, 7],
            [2, 3, 4],
            [2, 4, 5],
            [2, 4, 6],
            [2, 4, 7],
            [2, 5, 7],
            [2, 6, 8],
            [3, 4, 5],
            [3, 4, 6],
            [3, 4, 7],
            [6, 7, 8],
        ]
        .iter()
        .map(|f| f.iter().map(|v| v - 1).collect())
        .collect();
        let x = SimplicialComplex::from_maximal_faces(8, &faces).unwrap();
        let ops = OperatorBundle::assemble(&x).unwrap();
        let m = ops.symmetric_delta(1).transpose();
        let rhs = DVector::from_fn(m.nrows(), |i, _| ((i * 7919) % 13) as f64 - 6.0);
        let y = least_squares(&m, &rhs);
        assert!((m.transpose() * (&rhs - &m * &y)).norm() < 1e-9);
        assert_eq!(numerical_rank(&m), 16);
    }
}
