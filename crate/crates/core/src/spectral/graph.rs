//! Finite graphs: Cheeger constants, the Cheeger–Buser inequality and Ramanujan checks.

use nalgebra::DMatrix;
use serde::Serialize;

use super::gap::EIGEN_TOL;
use super::operators::sorted_eigenvalues;
use crate::complex::{Rational, SimplicialComplex, Vertex};
use crate::error::{HdxError, Result};

/// Largest vertex count accepted by [`cheeger_constant`].
pub const CHEEGER_MAX_VERTICES: usize = 22;

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(HdxError::Index { vertex: v, n });
                }
            }
            if a == b {
                return Err(HdxError::InvalidSpec(format!("self-loop at {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, adj })
    }

    /// The 1-skeleton of a complex.
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        let edges: Vec<(usize, usize)> = x
            .faces(1)
            .iter()
            .map(|e| (e.vertices()[0] as usize, e.vertices()[1] as usize))
            .collect();
        Self::new(x.n_vertices(), &edges).expect("edges of a complex are valid")
    }

    /// The graph as a 1-dimensional complex (impure when some vertex is isolated).
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let edges: Vec<Vec<Vertex>> = self
            .edges()
            .into_iter()
            .map(|(a, b)| vec![a as Vertex, b as Vertex])
            .collect();
        SimplicialComplex::from_faces(self.n, 1, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                self.adj[a]
                    .iter()
                    .filter(move |&&b| a < b)
                    .map(move |&b| (a, b))
            })
            .collect()
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A 2-coloring, if one exists (for a connected graph it is unique up to swap).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (a, b) in self.edges() {
            m[(a, b)] = 1.0;
            m[(b, a)] = 1.0;
        }
        m
    }

    /// Adjacency eigenvalues, descending.
    pub fn adjacency_spectrum(&self) -> Vec<f64> {
        let mut s = sorted_eigenvalues(&self.adjacency_matrix());
        s.reverse();
        s
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Self::new(n, &edges).expect("valid complete graph")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for v in 0..5 {
            edges.push((v, (v + 1) % 5));
            edges.push((v, v + 5));
            edges.push((v + 5, (v + 2) % 5 + 5));
        }
        Self::new(10, &edges).expect("valid Petersen graph")
    }

    /// The prism C_m × K_2.
    pub fn prism(m: usize) -> Self {
        let mut edges = Vec::new();
        for v in 0..m {
            edges.push((v, (v + 1) % m));
            edges.push((m + v, m + (v + 1) % m));
            edges.push((v, m + v));
        }
        Self::new(2 * m, &edges).expect("valid prism")
    }

    /// The Cartesian product: (a, b) ~ (a', b) for a ~ a', and (a, b) ~ (a, b') for b ~ b'.
    /// Vertex (a, b) is numbered a * other.n + b.
    pub fn cartesian_product(&self, other: &Graph) -> Self {
        let m = other.n;
        let mut edges = Vec::new();
        for (a, a2) in self.edges() {
            for b in 0..m {
                edges.push((a * m + b, a2 * m + b));
            }
        }
        for a in 0..self.n {
            for (b, b2) in other.edges() {
                edges.push((a * m + b, a * m + b2));
            }
        }
        Self::new(self.n * m, &edges).expect("valid product")
    }

    /// Point-line incidence graph of the projective plane over F_q, q prime.
    /// Points are `0..N`, lines `N..2N` with N = q² + q + 1.
    pub fn projective_plane_incidence(q: usize) -> Result<Self> {
        if q < 2 || (2..q).any(|a| a * a <= q && q.is_multiple_of(a)) {
            return Err(HdxError::Range(format!("q = {q} must be prime")));
        }
        let points = normalized_triples(q);
        let n = points.len();
        let mut edges = Vec::new();
        for (li, l) in points.iter().enumerate() {
            for (pi, p) in points.iter().enumerate() {
                if (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]) % q == 0 {
                    edges.push((pi, n + li));
                }
            }
        }
        Self::new(2 * n, &edges)
    }

    /// The Heawood graph, the incidence graph of the Fano plane.
    pub fn heawood() -> Self {
        Self::projective_plane_incidence(2).expect("2 is prime")
    }
}

/// Representatives of the points of PG(2, q): first nonzero coordinate equal to 1.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// h(G) = min over partitions V = A ⊔ B of |E(A, B)| / min(|A|, |B|), exactly.
/// Disconnected graphs give 0.
pub fn cheeger_constant(g: &Graph) -> Result<Rational> {
    let n = g.n;
    if n > CHEEGER_MAX_VERTICES {
        return Err(HdxError::SizeCap {
            size: n,
            cap: CHEEGER_MAX_VERTICES,
        });
    }
    if n < 2 {
        return Err(HdxError::Range(
            "the Cheeger constant needs at least two vertices".into(),
        ));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.adj[v].iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    // vertex n-1 stays in B; A walks all nonempty subsets of the rest in Gray-code order
    let mut a: u32 = 0;
    let mut size = 0usize;
    let mut cut: i64 = 0;
    let mut best: Option<(i64, usize)> = None;
    for step in 1u32..(1u32 << (n - 1)) {
        let v = step.trailing_zeros() as usize;
        let inside = (nbr[v] & a).count_ones() as i64;
        let deg = g.adj[v].len() as i64;
        if a & (1 << v) == 0 {
            cut += deg - 2 * inside;
            size += 1;
        } else {
            cut += 2 * inside - deg;
            size -= 1;
        }
        a ^= 1 << v;
        let denom = size.min(n - size);
        best = match best {
            Some((c, m)) if c * denom as i64 <= cut * m as i64 => Some((c, m)),
            _ => Some((cut, denom)),
        };
    }
    let (c, m) = best.expect("n >= 2 leaves a nonempty partition");
    Ok(Rational::new(c, m as i64))
}

/// Both sides of h²/(2k²) ≤ λ1 ≤ 2h/k for a connected k-regular graph, where λ1 is
/// the smallest nonzero eigenvalue of I - A/k.
#[derive(Clone, Debug, Serialize)]
pub struct CheegerBuser {
    pub k: usize,
    pub h: f64,
    pub lambda1: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

pub fn check_cheeger_buser(g: &Graph) -> Result<CheegerBuser> {
    let k = g.regular_degree().ok_or(HdxError::Regularity)?;
    if !g.is_connected() {
        return Err(HdxError::InvalidSpec("the graph must be connected".into()));
    }
    let h = cheeger_constant(g)?;
    let h = *h.numer() as f64 / *h.denom() as f64;
    let spec = g.adjacency_spectrum();
    let lambda1 = 1.0 - spec[1] / k as f64;
    let lower = h * h / (2.0 * (k * k) as f64);
    let upper = 2.0 * h / k as f64;
    let holds = lower <= lambda1 + EIGEN_TOL && lambda1 <= upper + EIGEN_TOL;
    Ok(CheegerBuser {
        k,
        h,
        lambda1,
        lower,
        upper,
        holds,
    })
}

/// Whether μ(G) ≤ 2√(k-1) for the largest nontrivial adjacency eigenvalue in absolute value.
#[derive(Clone, Debug, Serialize)]
pub struct RamanujanVerdict {
    pub k: usize,
    pub mu: f64,
    pub bound: f64,
    pub ramanujan: bool,
    /// μ is within tolerance of the bound.
    pub on_boundary: bool,
    pub bipartite: bool,
}

/// Uses |λ| over eigenvalues other than k (and other than -k when bipartite), with a
/// relative tolerance of 1e-9 at the bound.
pub fn ramanujan_certify(g: &Graph) -> Result<RamanujanVerdict> {
    let k = g.regular_degree().ok_or(HdxError::Regularity)?;
    if !g.is_connected() {
        return Err(HdxError::InvalidSpec("the graph must be connected".into()));
    }
    let spec = g.adjacency_spectrum();
    let bipartite = g.bipartition().is_some();
    let end = if bipartite {
        spec.len() - 1
    } else {
        spec.len()
    };
    let mu = spec[1..end].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = 2.0 * ((k as f64) - 1.0).sqrt();
    let tol = 1e-9 * bound.max(1.0);
    Ok(RamanujanVerdict {
        k,
        mu,
        bound,
        ramanujan: mu <= bound + tol,
        on_boundary: (mu - bound).abs() <= tol,
        bipartite,
    })
}

/// λ1 of the points-to-lines incidence graph of PG(2, q) next to the two closed forms in
/// circulation, flagging when they disagree.
#[derive(Clone, Debug, Serialize)]
pub struct PointsToLines {
    pub q: usize,
    pub lambda1: f64,
    /// 1 - √q/(q+1).
    pub closed_form: f64,
    /// 1 - 1/√q.
    pub inverse_sqrt_form: f64,
    pub forms_disagree: bool,
}

pub fn points_to_lines_report(q: usize) -> Result<PointsToLines> {
    let g = Graph::projective_plane_incidence(q)?;
    let k = g
        .regular_degree()
        .expect("incidence graphs of planes are regular");
    let spec = g.adjacency_spectrum();
    let lambda1 = 1.0 - spec[1] / k as f64;
    let qf = q as f64;
    let closed_form = 1.0 - qf.sqrt() / (qf + 1.0);
    let inverse_sqrt_form = 1.0 - 1.0 / qf.sqrt();
    Ok(PointsToLines {
        q,
        lambda1,
        closed_form,
        inverse_sqrt_form,
        forms_disagree: (closed_form - inverse_sqrt_form).abs() > 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheeger_of_small_graphs() {
        assert_eq!(
            cheeger_constant(&Graph::complete(4)).unwrap(),
            Rational::from_integer(2)
        );
        assert_eq!(
            cheeger_constant(&Graph::cycle(6)).unwrap(),
            Rational::new(2, 3)
        );
        assert_eq!(
            cheeger_constant(&Graph::petersen()).unwrap(),
            Rational::from_integer(1)
        );
        let two_edges = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            cheeger_constant(&two_edges).unwrap(),
            Rational::from_integer(0)
        );
        assert!(matches!(
            cheeger_constant(&Graph::cycle(23)),
            Err(HdxError::SizeCap { .. })
        ));
    }

    #[test]
    fn petersen_is_ramanujan() {
        let v = ramanujan_certify(&Graph::petersen()).unwrap();
        assert!((v.mu - 2.0).abs() < 1e-9);
        assert!(v.ramanujan && !v.on_boundary);
    }

    #[test]
    fn heawood_is_ramanujan() {
        let v = ramanujan_certify(&Graph::heawood()).unwrap();
        assert!((v.mu - 2f64.sqrt()).abs() < 1e-9);
        assert!(v.bipartite && v.ramanujan && !v.on_boundary);
        assert_eq!(Graph::heawood().regular_degree(), Some(3));
        assert_eq!(Graph::heawood().n(), 14);
    }

    #[test]
    fn tie_at_the_bound_counts_as_ramanujan() {
        // 5-regular with nontrivial eigenvalue -2 + -2 = -4 = -2√4
        let g = Graph::petersen().cartesian_product(&Graph::cycle(4));
        let v = ramanujan_certify(&g).unwrap();
        assert_eq!(v.k, 5);
        assert!(v.ramanujan && v.on_boundary, "{v:?}");
    }

    #[test]
    fn incidence_graph_gap_matches_closed_form() {
        for q in [2, 3, 5] {
            let r = points_to_lines_report(q).unwrap();
            assert!((r.lambda1 - r.closed_form).abs() < 1e-9, "{r:?}");
            assert!(r.forms_disagree);
        }
    }

    #[test]
    fn irregular_graph_is_rejected() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            ramanujan_certify(&path),
            Err(HdxError::Regularity)
        ));
        assert!(matches!(
            check_cheeger_buser(&path),
            Err(HdxError::Regularity)
        ));
    }
}
