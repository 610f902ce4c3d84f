//! Finite simplicial complexes over a fixed ordered vertex set.
//!
//! A [`SimplicialComplex`] stores every face, indexed per dimension in lexicographic
//! order, together with the facet and coface incidences and the number of top cells
//! above each face. The empty face is always present as the unique (-1)-cell, so every
//! cochain space starts at dimension -1 and cohomology in degree 0 is reduced.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, Combinations};
use crate::error::{HdxError, Result};

pub type Vertex = u32;

/// Exact rational used for weights and norms.
pub type Rational = Ratio<i64>;

/// A face: a strictly ascending list of vertex indices. The empty list is the (-1)-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from arbitrary-order vertices. Repeated vertices are rejected.
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Self> {
        let mut v = vertices.into();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(HdxError::Dimension(format!("repeated vertex in {v:?}")));
        }
        Ok(Face(v))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The facet obtained by deleting the vertex at position `pos`.
    pub fn without(&self, pos: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(pos);
        Face(v)
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(f: Face) -> Self {
        f.0
    }
}

/// Oriented incidence number `[F : G]` for `dim F = dim G + 1`.
///
/// Returns `(-1)^l` when `G` is `F` with its `l`-th vertex (ascending order) removed, and
/// `0` when `G` is not a facet of `F`.
pub fn incidence_number(f: &Face, g: &Face) -> Result<i8> {
    if f.0.len() != g.0.len() + 1 {
        return Err(HdxError::Dimension(format!(
            "incidence needs dim F = dim G + 1, got {} and {}",
            f.dim(),
            g.dim()
        )));
    }
    if !g.is_subface_of(f) {
        return Ok(0);
    }
    let pos =
        f.0.iter()
            .zip(g.0.iter())
            .position(|(a, b)| a != b)
            .unwrap_or(g.0.len());
    Ok(if pos % 2 == 0 { 1 } else { -1 })
}

/// A finite simplicial complex with all faces materialized, including the empty face.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    dim: usize,
    /// `faces[i + 1]`: the i-cells, sorted lexicographically.
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    /// `facets[i + 1]`: for each i-cell, the indices of its (i-1)-facets ordered by the
    /// position of the removed vertex. Empty for i = -1.
    facets: Vec<Vec<Vec<usize>>>,
    /// `cofaces[i + 1]`: for each i-cell, the indices of the (i+1)-cells containing it.
    cofaces: Vec<Vec<Vec<usize>>>,
    /// `degrees[i + 1][j]`: number of top cells containing the j-th i-cell.
    degrees: Vec<Vec<u64>>,
    pure: bool,
}

fn slot(i: isize) -> usize {
    (i + 1) as usize
}

impl SimplicialComplex {
    /// Downward closure of a list of equal-size maximal faces on the vertex set `0..n`.
    ///
    /// Every vertex must appear in some face and all faces must have the same size, so the
    /// result is pure. Duplicate faces are merged.
    pub fn from_maximal_faces(n: usize, maximal: &[Vec<Vertex>]) -> Result<Self> {
        if maximal.is_empty() {
            return Err(HdxError::InvalidSpec("no maximal faces given".into()));
        }
        let size = maximal[0].len();
        if let Some(bad) = maximal.iter().find(|f| f.len() != size) {
            return Err(HdxError::Purity(size, bad.len()));
        }
        if size == 0 {
            return Err(HdxError::InvalidSpec(
                "maximal faces must be nonempty".into(),
            ));
        }
        let complex = Self::from_faces(n, size - 1, maximal)?;
        if let Some(f) = complex.first_uncovered_face() {
            // only vertices can be uncovered here: an unused index in 0..n
            return Err(HdxError::Purity(size, f.vertices().len()));
        }
        Ok(complex)
    }

    /// Downward closure of arbitrary faces on the vertex set `0..n`, declared to have top
    /// dimension `dim`. Every vertex in `0..n` is a 0-cell even if no face uses it. The result
    /// may be impure; see [`SimplicialComplex::is_pure`].
    pub fn from_faces(n: usize, dim: usize, faces: &[Vec<Vertex>]) -> Result<Self> {
        let mut sets: Vec<HashSet<Vec<Vertex>>> = vec![HashSet::new(); dim + 2];
        sets[0].insert(Vec::new());
        for v in 0..n as Vertex {
            sets[1].insert(vec![v]);
        }
        for raw in faces {
            let face = Face::new(raw.clone())?;
            if let Some(&v) = face.vertices().iter().find(|&&v| v as usize >= n) {
                return Err(HdxError::Index {
                    vertex: v as usize,
                    n,
                });
            }
            if face.0.len() > dim + 1 {
                return Err(HdxError::Dimension(format!(
                    "face {:?} exceeds declared dimension {dim}",
                    face.0
                )));
            }
            if face.0.len() <= 1 || sets[face.0.len()].contains(&face.0) {
                continue;
            }
            insert_closure(&face.0, &mut sets);
        }
        Ok(Self::from_face_sets(n, dim, sets))
    }

    /// Assembles a complex from already downward-closed face sets, `sets[i + 1]` = i-cells.
    pub(crate) fn from_face_sets(n: usize, dim: usize, sets: Vec<HashSet<Vec<Vertex>>>) -> Self {
        let faces: Vec<Vec<Face>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Face> = s.into_iter().map(Face::from_sorted).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index: Vec<HashMap<Face, usize>> = faces
            .iter()
            .map(|fs| {
                fs.iter()
                    .cloned()
                    .enumerate()
                    .map(|(j, f)| (f, j))
                    .collect()
            })
            .collect();

        let mut facets = vec![Vec::new(); faces.len()];
        let mut cofaces: Vec<Vec<Vec<usize>>> =
            faces.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
        for s in 1..faces.len() {
            let lower = &index[s - 1];
            facets[s] = faces[s]
                .iter()
                .map(|f| {
                    (0..f.0.len())
                        .map(|pos| lower[&f.without(pos)])
                        .collect::<Vec<_>>()
                })
                .collect();
            for (j, fs) in facets[s].iter().enumerate() {
                for &g in fs {
                    cofaces[s - 1][g].push(j);
                }
            }
        }

        // deg(F) for an i-cell F: sum of degrees of its (i+1)-cofaces divided by d - i,
        // since each top cell above F contains exactly d - i of those cofaces.
        let top = dim + 1;
        let mut degrees: Vec<Vec<u64>> = faces.iter().map(|fs| vec![0; fs.len()]).collect();
        degrees[top] = vec![1; faces[top].len()];
        for s in (0..top).rev() {
            let mult = (top - s) as u64;
            for j in 0..faces[s].len() {
                let total: u64 = cofaces[s][j].iter().map(|&c| degrees[s + 1][c]).sum();
                degrees[s][j] = total / mult;
            }
        }
        let pure = degrees.iter().all(|ds| ds.iter().all(|&d| d > 0));

        SimplicialComplex {
            n_vertices: n,
            dim,
            faces,
            index,
            facets,
            cofaces,
            degrees,
            pure,
        }
    }

    /// The complete d-dimensional complex on `n` vertices: every subset of size at most d+1.
    pub fn complete(n: usize, d: usize) -> Result<Self> {
        if d + 1 > n {
            return Err(HdxError::Range(format!(
                "complete complex needs d + 1 <= n, got n={n}, d={d}"
            )));
        }
        let top: Vec<Vec<Vertex>> = Combinations::new(n, d + 1).collect();
        Self::from_maximal_faces(n, &top)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Declared top dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when every face lies in some top cell (and at least one top cell exists).
    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn require_pure(&self) -> Result<()> {
        match self.first_uncovered_face() {
            Some(f) => Err(HdxError::NotPure(f.0.clone())),
            None => Ok(()),
        }
    }

    fn first_uncovered_face(&self) -> Option<&Face> {
        self.degrees
            .iter()
            .zip(&self.faces)
            .find_map(|(ds, fs)| ds.iter().position(|&d| d == 0).map(|j| &fs[j]))
    }

    /// The i-cells, for `-1 <= i <= d`; empty slice outside that range.
    pub fn faces(&self, i: isize) -> &[Face] {
        if i < -1 || i > self.dim as isize {
            return &[];
        }
        &self.faces[slot(i)]
    }

    pub fn count(&self, i: isize) -> usize {
        self.faces(i).len()
    }

    pub fn top_cells(&self) -> &[Face] {
        self.faces(self.dim as isize)
    }

    pub fn face_index(&self, f: &Face) -> Option<usize> {
        let s = f.0.len();
        self.index.get(s).and_then(|m| m.get(f).copied())
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.face_index(f).is_some()
    }

    /// Facet indices of the j-th i-cell, ordered by removed position; the sign of the
    /// incidence with the l-th entry is `(-1)^l`.
    pub fn facets(&self, i: isize, j: usize) -> &[usize] {
        &self.facets[slot(i)][j]
    }

    /// Indices of the (i+1)-cells containing the j-th i-cell.
    pub fn cofaces(&self, i: isize, j: usize) -> &[usize] {
        &self.cofaces[slot(i)][j]
    }

    /// deg(F): the number of top cells containing F.
    pub fn degree(&self, f: &Face) -> Result<u64> {
        let j = self
            .face_index(f)
            .ok_or_else(|| HdxError::MissingFace(f.0.clone()))?;
        Ok(self.degrees[f.0.len()][j])
    }

    /// Degrees of all i-cells in index order.
    pub fn degrees(&self, i: isize) -> &[u64] {
        if i < -1 || i > self.dim as isize {
            return &[];
        }
        &self.degrees[slot(i)]
    }

    /// Faces not contained in any strictly larger face.
    pub fn maximal_faces(&self) -> Vec<&Face> {
        let mut out = Vec::new();
        for i in 0..=self.dim as isize {
            for (j, f) in self.faces(i).iter().enumerate() {
                if i == self.dim as isize || self.cofaces(i, j).is_empty() {
                    out.push(f);
                }
            }
        }
        out
    }

    /// All faces of dimension at most j.
    pub fn skeleton(&self, j: usize) -> Result<Self> {
        if j > self.dim {
            return Err(HdxError::Range(format!(
                "skeleton({j}) of a {}-complex",
                self.dim
            )));
        }
        let sets = self.faces[..j + 2]
            .iter()
            .map(|fs| fs.iter().map(|f| f.0.clone()).collect())
            .collect();
        Ok(Self::from_face_sets(self.n_vertices, j, sets))
    }

    /// The subcomplex generated by the top cells, on the vertices they use, re-indexed.
    pub fn pure_part(&self) -> Link {
        let top: Vec<&Face> = self.top_cells().iter().collect();
        relabel(self.dim, top.iter().map(|f| f.vertices().to_vec()))
    }

    /// lk(F) = {G : F ∪ G ∈ X, F ∩ G = ∅}, re-indexed over its own vertex set.
    pub fn link(&self, f: &Face) -> Result<Link> {
        let j = self
            .face_index(f)
            .ok_or_else(|| HdxError::MissingFace(f.0.clone()))?;
        let fdim = f.dim();
        // walk up the coface index to collect every face containing F
        let mut containing: Vec<Vec<Vertex>> = Vec::new();
        let mut layer = vec![j];
        let mut i = fdim;
        while i <= self.dim as isize {
            for &c in &layer {
                let h = &self.faces(i)[c];
                containing.push(h.0.iter().copied().filter(|v| !f.0.contains(v)).collect());
            }
            if i == self.dim as isize {
                break;
            }
            let mut next: Vec<usize> = layer
                .iter()
                .flat_map(|&c| self.cofaces(i, c).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            layer = next;
            i += 1;
        }
        let link_dim = (self.dim as isize - fdim - 1).max(0) as usize;
        Ok(relabel(link_dim, containing.into_iter()))
    }

    /// (max over vertices of their degree, max over (d-1)-cells of their degree).
    pub fn degree_profile(&self) -> (u64, u64) {
        let vmax = self.degrees(0).iter().copied().max().unwrap_or(0);
        let umax = if self.dim == 0 {
            // the (d-1)-cell is the empty face
            self.count(0) as u64
        } else {
            self.degrees(self.dim as isize - 1)
                .iter()
                .copied()
                .max()
                .unwrap_or(0)
        };
        (vmax, umax)
    }

    /// The weight function w(F) = deg(F) / (C(d+1, i+1) |X^(d)|).
    pub fn weights(&self) -> Result<WeightFunction> {
        let top = self.count(self.dim as isize) as u64;
        if top == 0 {
            return Err(HdxError::Range("weights need at least one top cell".into()));
        }
        let denominators = (-1..=self.dim as isize)
            .map(|i| binomial(self.dim as u64 + 1, (i + 1) as u64) * top)
            .collect();
        Ok(WeightFunction {
            numerators: self.degrees.clone(),
            denominators,
        })
    }

    pub fn weight(&self, f: &Face) -> Result<Rational> {
        let j = self
            .face_index(f)
            .ok_or_else(|| HdxError::MissingFace(f.0.clone()))?;
        Ok(self.weights()?.weight(f.dim(), j))
    }

    /// Serializes as MFL-JSON: 1-based maximal faces, sorted lexicographically.
    pub fn to_mfl_json(&self) -> String {
        let mut maximal: Vec<Vec<Vertex>> = self
            .maximal_faces()
            .into_iter()
            .map(|f| f.0.iter().map(|v| v + 1).collect())
            .collect();
        maximal.sort();
        let doc = MflJson {
            n: self.n_vertices,
            maximal_faces: maximal,
        };
        serde_json::to_string(&doc).expect("MFL-JSON serialization cannot fail")
    }

    /// Parses MFL-JSON. The declared dimension is the largest maximal face; impure inputs are
    /// accepted (graphs with isolated vertices, partial complexes).
    pub fn from_mfl_json(text: &str) -> Result<Self> {
        let doc: MflJson = serde_json::from_str(text)?;
        let mut faces = Vec::with_capacity(doc.maximal_faces.len());
        for f in &doc.maximal_faces {
            if f.contains(&0) {
                return Err(HdxError::Index {
                    vertex: 0,
                    n: doc.n,
                });
            }
            faces.push(f.iter().map(|v| v - 1).collect::<Vec<_>>());
        }
        let dim = faces.iter().map(|f| f.len()).max().unwrap_or(1).max(1) - 1;
        Self::from_faces(doc.n, dim, &faces)
    }

    /// Canonical content equality (same vertex count, dimension and faces).
    pub fn same_faces(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.dim == other.dim && self.faces == other.faces
    }
}

fn insert_closure(face: &[Vertex], sets: &mut [HashSet<Vec<Vertex>>]) {
    if !sets[face.len()].insert(face.to_vec()) || face.len() <= 1 {
        return;
    }
    for pos in 0..face.len() {
        let mut sub = face.to_vec();
        sub.remove(pos);
        insert_closure(&sub, sets);
    }
}

fn relabel(dim: usize, faces: impl Iterator<Item = Vec<Vertex>>) -> Link {
    let faces: Vec<Vec<Vertex>> = faces.collect();
    let mut verts: Vec<Vertex> = faces.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let fwd: HashMap<Vertex, Vertex> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    let mut sets: Vec<HashSet<Vec<Vertex>>> = vec![HashSet::new(); dim + 2];
    sets[0].insert(Vec::new());
    for f in &faces {
        let mapped: Vec<Vertex> = f.iter().map(|v| fwd[v]).collect();
        insert_closure(&mapped, &mut sets);
    }
    Link {
        complex: SimplicialComplex::from_face_sets(verts.len(), dim, sets),
        parent_vertices: verts,
    }
}

/// A re-indexed subcomplex together with the map back to the parent's vertices.
#[derive(Clone, Debug)]
pub struct Link {
    pub complex: SimplicialComplex,
    /// `parent_vertices[v]` is the parent index of local vertex `v`.
    pub parent_vertices: Vec<Vertex>,
}

/// The weight function of a complex, per dimension, as exact rationals.
///
/// All i-cells share the denominator `C(d+1, i+1) |X^(d)|`, so norms can be accumulated as
/// integer sums of degrees.
#[derive(Clone, Debug)]
pub struct WeightFunction {
    numerators: Vec<Vec<u64>>,
    denominators: Vec<u64>,
}

impl WeightFunction {
    pub fn weight(&self, i: isize, j: usize) -> Rational {
        Rational::new(
            self.numerators[slot(i)][j] as i64,
            self.denominators[slot(i)] as i64,
        )
    }

    pub fn numerators(&self, i: isize) -> &[u64] {
        &self.numerators[slot(i)]
    }

    pub fn denominator(&self, i: isize) -> u64 {
        self.denominators[slot(i)]
    }

    /// Σ w(F) over the i-cells.
    pub fn total(&self, i: isize) -> Rational {
        let num: u64 = self.numerators(i).iter().sum();
        Rational::new(num as i64, self.denominator(i) as i64)
    }
}

#[derive(Serialize, Deserialize)]
struct MflJson {
    n: usize,
    maximal_faces: Vec<Vec<Vertex>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_two_triangles() {
        let x = SimplicialComplex::from_maximal_faces(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            (x.count(-1), x.count(0), x.count(1), x.count(2)),
            (1, 4, 5, 2)
        );
        assert_eq!(x.dim(), 2);
        assert!(x.is_pure());
    }

    #[test]
    fn mixed_sizes_are_impure() {
        let err = SimplicialComplex::from_maximal_faces(5, &[vec![0, 1, 2], vec![3, 4]]);
        assert!(matches!(err, Err(HdxError::Purity(3, 2))));
    }

    #[test]
    fn unused_vertex_is_impure() {
        let err = SimplicialComplex::from_maximal_faces(3, &[vec![0, 1]]);
        assert!(matches!(err, Err(HdxError::Purity(..))));
    }

    #[test]
    fn duplicates_merge() {
        let x = SimplicialComplex::from_maximal_faces(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(x.count(1), 1);
        assert_eq!(x.count(0), 2);
    }

    #[test]
    fn out_of_range_vertex() {
        let err = SimplicialComplex::from_maximal_faces(3, &[vec![0, 1, 3]]);
        assert!(matches!(err, Err(HdxError::Index { vertex: 3, n: 3 })));
    }

    #[test]
    fn incidence_numbers() {
        let f = face(&[1, 2, 3]);
        assert_eq!(incidence_number(&f, &face(&[1, 3])).unwrap(), -1);
        assert_eq!(incidence_number(&f, &face(&[2, 3])).unwrap(), 1);
        assert_eq!(incidence_number(&f, &face(&[1, 2])).unwrap(), 1);
        assert_eq!(incidence_number(&face(&[1, 2]), &face(&[3])).unwrap(), 0);
        assert_eq!(incidence_number(&face(&[4]), &Face::empty()).unwrap(), 1);
        assert!(incidence_number(&f, &face(&[1])).is_err());
    }

    #[test]
    fn incidence_composition_vanishes() {
        let x = SimplicialComplex::complete(5, 3).unwrap();
        for i in 1..=3isize {
            for f in x.faces(i) {
                for h in x.faces(i - 2) {
                    let s: i32 = x
                        .faces(i - 1)
                        .iter()
                        .map(|g| {
                            incidence_number(f, g).unwrap() as i32
                                * incidence_number(g, h).unwrap() as i32
                        })
                        .sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn degrees_in_complete_complex() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        assert_eq!(x.degree(&face(&[0, 1])).unwrap(), 2);
        assert_eq!(x.degree(&face(&[0, 1, 2])).unwrap(), 1);
        assert_eq!(x.degree(&Face::empty()).unwrap(), 4);
        assert_eq!(x.degree(&face(&[2])).unwrap(), 3);
        assert!(matches!(
            x.degree(&face(&[0, 9])),
            Err(HdxError::MissingFace(_))
        ));
        assert_eq!(x.degree_profile(), (3, 2));
        let single = SimplicialComplex::from_maximal_faces(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(single.degree_profile(), (1, 1));
    }

    #[test]
    fn links_in_complete_complex() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let lk = x.link(&face(&[0])).unwrap();
        assert_eq!(lk.complex.dim(), 1);
        assert_eq!((lk.complex.count(0), lk.complex.count(1)), (3, 3));
        assert_eq!(lk.parent_vertices, vec![1, 2, 3]);
        assert!(lk.complex.is_pure());

        let lk = x.link(&face(&[0, 1])).unwrap();
        assert_eq!(lk.complex.dim(), 0);
        assert_eq!(lk.complex.count(0), 2);
        assert_eq!(lk.parent_vertices, vec![2, 3]);

        let lk = x.link(&Face::empty()).unwrap();
        assert!(lk.complex.same_faces(&x));
    }

    #[test]
    fn link_dimension_is_codimension() {
        let x = SimplicialComplex::complete(6, 3).unwrap();
        for i in -1..=3isize {
            for f in x.faces(i) {
                let lk = x.link(f).unwrap();
                assert_eq!(lk.complex.dim() as isize, (3 - i - 1).max(0));
            }
        }
    }

    #[test]
    fn skeletons() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        assert!(x
            .skeleton(1)
            .unwrap()
            .same_faces(&SimplicialComplex::complete(4, 1).unwrap()));
        assert!(x.skeleton(2).unwrap().same_faces(&x));
        let s0 = x.skeleton(0).unwrap();
        assert_eq!((s0.dim(), s0.count(0)), (0, 4));
        assert!(s0.is_pure());
        assert!(x.skeleton(3).is_err());
        let a = x.skeleton(2).unwrap().skeleton(1).unwrap();
        assert!(a.same_faces(&x.skeleton(1).unwrap()));
    }

    #[test]
    fn weights_are_probability_measures() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        assert_eq!(x.weight(&face(&[0, 1])).unwrap(), Rational::new(1, 6));
        assert_eq!(x.weight(&Face::empty()).unwrap(), Rational::from_integer(1));
        assert_eq!(x.weight(&face(&[0, 1, 3])).unwrap(), Rational::new(1, 4));
        let w = x.weights().unwrap();
        for i in -1..=2 {
            assert_eq!(w.total(i), Rational::from_integer(1));
        }
    }

    #[test]
    fn complete_complex_counts() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        assert_eq!(x.count(2), 10);
        let k = SimplicialComplex::complete(6, 1).unwrap();
        assert_eq!(k.count(1), 15);
        assert!(SimplicialComplex::complete(2, 2).is_err());
    }

    #[test]
    fn impure_complexes_are_flagged() {
        let g = SimplicialComplex::from_faces(4, 1, &[vec![0, 1]]).unwrap();
        assert!(!g.is_pure());
        assert_eq!(g.count(0), 4);
        assert!(matches!(g.require_pure(), Err(HdxError::NotPure(v)) if v == vec![2]));
    }

    #[test]
    fn mfl_round_trip() {
        let x = SimplicialComplex::from_faces(5, 2, &[vec![1, 2, 3], vec![0, 1, 2], vec![3, 4]])
            .unwrap();
        let text = x.to_mfl_json();
        assert_eq!(text, r#"{"n":5,"maximal_faces":[[1,2,3],[2,3,4],[4,5]]}"#);
        let y = SimplicialComplex::from_mfl_json(&text).unwrap();
        assert!(x.same_faces(&y));
        assert_eq!(y.to_mfl_json(), text);
        assert!(SimplicialComplex::from_mfl_json(r#"{"n":2,"maximal_faces":[[0,1]]}"#).is_err());
    }
}
