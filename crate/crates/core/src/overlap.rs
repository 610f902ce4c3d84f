//! Geometric overlap of affine placements in R^2 and R^3.
//!
//! For a placement of the vertices, the overlap at z is the fraction of d-cells whose
//! (closed) image simplex contains z. Search candidates are a regular grid over the bounding
//! box, or uniform samples from it, together with the centroids of all d-cells. Whatever the
//! search, the returned fraction is recounted at the returned point, so it is a certified
//! lower bound on the maximum.

use std::cmp::Ordering;
use std::io::{Read, Write};

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{HdxError, Result};
use crate::random::{stream_rng, StreamRng};

/// Barycentric slack of the closed-simplex test.
pub const BARYCENTRIC_SLACK: f64 = 1e-12;
/// Default grid points per axis.
pub const DEFAULT_RESOLUTION: usize = 256;

/// n points in R^d, d ∈ {2, 3}.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(HdxError::Dimension(format!(
                "ambient dimension {dim} not in {{2, 3}}"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(HdxError::Dimension(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(HdxError::Range(format!(
                    "point {i} has a non-finite coordinate"
                )));
            }
        }
        Ok(Self { dim, points })
    }

    /// n independent uniform points in the unit cube.
    pub fn uniform(n: usize, dim: usize, rng: &mut impl Rng) -> Result<Self> {
        let points = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
            .collect();
        Self::new(dim, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, v: usize) -> &[f64] {
        &self.points[v]
    }

    /// Applies x ↦ scale·x + shift to every point.
    pub fn transformed(&self, scale: f64, shift: &[f64]) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(shift).map(|(c, s)| scale * c + s).collect())
            .collect();
        Self::new(self.dim, pts)
    }

    /// (min, max) corners.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in &self.points {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Reads rows `vertex,x,y[,z]` with 1-based vertex indices; a header row is optional.
    /// Every vertex 1..=n must appear exactly once.
    pub fn from_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let Ok(v) = rec[0].parse::<usize>() else {
                if line == 0 {
                    continue;
                }
                return Err(HdxError::InvalidSpec(format!(
                    "row {}: bad vertex index {:?}",
                    line + 1,
                    &rec[0]
                )));
            };
            let coords = rec
                .iter()
                .skip(1)
                .map(|c| c.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| HdxError::InvalidSpec(format!("row {}: {e}", line + 1)))?;
            rows.push((v, coords));
        }
        let n = rows.len();
        let dim = rows.first().map_or(2, |r| r.1.len());
        let mut points: Vec<Option<Vec<f64>>> = vec![None; n];
        for (v, c) in rows {
            if v == 0 || v > n {
                return Err(HdxError::Index { vertex: v, n });
            }
            if points[v - 1].replace(c).is_some() {
                return Err(HdxError::InvalidSpec(format!("vertex {v} listed twice")));
            }
        }
        Self::new(
            dim,
            points
                .into_iter()
                .map(|p| p.expect("n distinct indices in 1..=n"))
                .collect(),
        )
    }

    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["vertex", "x", "y"];
        if self.dim == 3 {
            header.push("z");
        }
        w.write_record(&header)?;
        for (v, p) in self.points.iter().enumerate() {
            let mut rec = vec![(v + 1).to_string()];
            rec.extend(p.iter().map(|c| c.to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Precomputed barycentric solver for one image simplex.
#[derive(Clone, Debug)]
pub enum SimplexTest {
    Tri {
        v0: Vector2<f64>,
        inv: Matrix2<f64>,
    },
    Tet {
        v0: Vector3<f64>,
        inv: Matrix3<f64>,
    },
    /// Affinely dependent vertices; covers nothing.
    Degenerate,
}

impl SimplexTest {
    pub fn new(vertices: &[&[f64]]) -> Self {
        let scale = vertices
            .iter()
            .flat_map(|a| {
                vertices.iter().map(move |b| {
                    a.iter()
                        .zip(b.iter())
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max)
                })
            })
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return SimplexTest::Degenerate;
        }
        match vertices.len() {
            3 => {
                let v0 = Vector2::new(vertices[0][0], vertices[0][1]);
                let t = Matrix2::from_columns(&[
                    Vector2::new(vertices[1][0], vertices[1][1]) - v0,
                    Vector2::new(vertices[2][0], vertices[2][1]) - v0,
                ]);
                if t.determinant().abs() <= 1e-12 * scale * scale {
                    return SimplexTest::Degenerate;
                }
                t.try_inverse()
                    .map_or(SimplexTest::Degenerate, |inv| SimplexTest::Tri { v0, inv })
            }
            4 => {
                let col = |p: &[f64]| Vector3::new(p[0], p[1], p[2]);
                let v0 = col(vertices[0]);
                let t = Matrix3::from_columns(&[
                    col(vertices[1]) - v0,
                    col(vertices[2]) - v0,
                    col(vertices[3]) - v0,
                ]);
                if t.determinant().abs() <= 1e-12 * scale.powi(3) {
                    return SimplexTest::Degenerate;
                }
                t.try_inverse()
                    .map_or(SimplexTest::Degenerate, |inv| SimplexTest::Tet { v0, inv })
            }
            _ => SimplexTest::Degenerate,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, SimplexTest::Degenerate)
    }

    /// Closed containment: every barycentric coordinate ≥ -[`BARYCENTRIC_SLACK`].
    #[inline]
    pub fn contains(&self, z: &[f64]) -> bool {
        match self {
            SimplexTest::Tri { v0, inv } => {
                let l = inv * (Vector2::new(z[0], z[1]) - v0);
                l[0] >= -BARYCENTRIC_SLACK
                    && l[1] >= -BARYCENTRIC_SLACK
                    && 1.0 - l[0] - l[1] >= -BARYCENTRIC_SLACK
            }
            SimplexTest::Tet { v0, inv } => {
                let l = inv * (Vector3::new(z[0], z[1], z[2]) - v0);
                l.iter().all(|&c| c >= -BARYCENTRIC_SLACK) && 1.0 - l.sum() >= -BARYCENTRIC_SLACK
            }
            SimplexTest::Degenerate => false,
        }
    }
}

/// Whether z lies in the closed simplex spanned by `vertices` (d+1 points in R^d).
/// Degenerate simplices contain nothing.
pub fn point_in_simplex(z: &[f64], vertices: &[&[f64]]) -> bool {
    SimplexTest::new(vertices).contains(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "method")]
pub enum SearchMethod {
    /// `resolution` points per axis over the bounding box.
    Grid { resolution: usize },
    /// `samples` uniform points in the bounding box.
    Sampled { samples: usize, seed: u64 },
}

impl Default for SearchMethod {
    fn default() -> Self {
        SearchMethod::Grid {
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapEstimate {
    /// The best candidate found (lexicographically smallest among ties).
    pub point: Vec<f64>,
    /// d-cells whose image contains `point`.
    pub covering: usize,
    pub cells: usize,
    pub fraction: f64,
    #[serde(flatten)]
    pub method: SearchMethod,
    /// Image simplices that are affinely degenerate.
    pub degenerate: usize,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Higher count wins; ties go to the lexicographically smaller point.
fn better(a: (usize, Vec<f64>), b: (usize, Vec<f64>)) -> (usize, Vec<f64>) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if lex_cmp(&b.1, &a.1) == Ordering::Less {
                b
            } else {
                a
            }
        }
    }
}

fn simplex_tests(x: &SimplicialComplex, placement: &PointCloud) -> Result<Vec<SimplexTest>> {
    let d = x.dim();
    if d != placement.dim() {
        return Err(HdxError::Dimension(format!(
            "{d}-complex placed in R^{}",
            placement.dim()
        )));
    }
    if placement.len() != x.n_vertices() {
        return Err(HdxError::Dimension(format!(
            "{} points for {} vertices",
            placement.len(),
            x.n_vertices()
        )));
    }
    Ok(x.top_cells()
        .iter()
        .map(|c| {
            let vs: Vec<&[f64]> = c
                .vertices()
                .iter()
                .map(|&v| placement.point(v as usize))
                .collect();
            SimplexTest::new(&vs)
        })
        .collect())
}

fn centroids(x: &SimplicialComplex, placement: &PointCloud) -> Vec<Vec<f64>> {
    let d = placement.dim();
    x.top_cells()
        .iter()
        .map(|c| {
            let mut z = vec![0.0; d];
            for &v in c.vertices() {
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk += placement.point(v as usize)[k];
                }
            }
            z.iter().map(|s| s / c.vertices().len() as f64).collect()
        })
        .collect()
}

fn count_at(tests: &[SimplexTest], z: &[f64]) -> usize {
    tests.iter().filter(|t| t.contains(z)).count()
}

/// Best of a list of explicit candidates, evaluated in parallel.
fn best_of(tests: &[SimplexTest], candidates: Vec<Vec<f64>>) -> Option<(usize, Vec<f64>)> {
    candidates
        .into_par_iter()
        .map(|z| (count_at(tests, &z), z))
        .reduce_with(better)
}

/// Regular grid of `r` points per axis: point i on axis k is lo_k + i·(extent_k / (r-1)).
struct Grid {
    dim: usize,
    r: usize,
    lo: Vec<f64>,
    step: Vec<f64>,
}

impl Grid {
    fn new(lo: Vec<f64>, hi: &[f64], r: usize) -> Self {
        let step = lo
            .iter()
            .zip(hi)
            .map(|(a, b)| if r > 1 { (b - a) / (r - 1) as f64 } else { 0.0 })
            .collect();
        Self {
            dim: lo.len(),
            r,
            lo,
            step,
        }
    }

    fn coord(&self, k: usize, i: usize) -> f64 {
        self.lo[k] + i as f64 * self.step[k]
    }

    fn point(&self, idx: &[usize]) -> Vec<f64> {
        (0..self.dim).map(|k| self.coord(k, idx[k])).collect()
    }

    /// Index range on axis k that can meet [a, b], padded by one cell.
    fn range(&self, k: usize, a: f64, b: f64) -> (usize, usize) {
        if self.step[k] == 0.0 {
            return (0, self.r - 1);
        }
        let lo = ((a - self.lo[k]) / self.step[k]).floor() - 1.0;
        let hi = ((b - self.lo[k]) / self.step[k]).ceil() + 1.0;
        let clamp = |v: f64| v.max(0.0).min((self.r - 1) as f64) as usize;
        (clamp(lo), clamp(hi))
    }
}

/// Per-simplex coordinate bounds.
fn simplex_bounds(x: &SimplicialComplex, placement: &PointCloud) -> Vec<(Vec<f64>, Vec<f64>)> {
    let d = placement.dim();
    x.top_cells()
        .iter()
        .map(|c| {
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for &v in c.vertices() {
                let p = placement.point(v as usize);
                for k in 0..d {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
            (lo, hi)
        })
        .collect()
}

/// Covering counts at every grid point, one x-slice per parallel task.
fn grid_counts(grid: &Grid, tests: &[SimplexTest], bounds: &[(Vec<f64>, Vec<f64>)]) -> Vec<u32> {
    let r = grid.r;
    let slice_len = r.pow(grid.dim as u32 - 1);
    let mut counts = vec![0u32; slice_len * r];
    let ranges: Vec<Vec<(usize, usize)>> = bounds
        .iter()
        .map(|(lo, hi)| (0..grid.dim).map(|k| grid.range(k, lo[k], hi[k])).collect())
        .collect();
    counts
        .par_chunks_mut(slice_len)
        .enumerate()
        .for_each(|(i0, slice)| {
            let mut z = vec![0.0; grid.dim];
            z[0] = grid.coord(0, i0);
            for (t, rg) in tests.iter().zip(&ranges) {
                if t.is_degenerate() || i0 < rg[0].0 || i0 > rg[0].1 {
                    continue;
                }
                for i1 in rg[1].0..=rg[1].1 {
                    z[1] = grid.coord(1, i1);
                    if grid.dim == 2 {
                        if t.contains(&z) {
                            slice[i1] += 1;
                        }
                    } else {
                        for i2 in rg[2].0..=rg[2].1 {
                            z[2] = grid.coord(2, i2);
                            if t.contains(&z) {
                                slice[i1 * r + i2] += 1;
                            }
                        }
                    }
                }
            }
        });
    counts
}

/// Maximum covered fraction over the candidate set of `method`, plus all d-cell centroids.
pub fn affine_overlap(
    x: &SimplicialComplex,
    placement: &PointCloud,
    method: SearchMethod,
) -> Result<OverlapEstimate> {
    let tests = simplex_tests(x, placement)?;
    let cells = tests.len();
    if cells == 0 {
        return Err(HdxError::Range("the complex has no top cells".into()));
    }
    let degenerate = tests.iter().filter(|t| t.is_degenerate()).count();
    let (lo, hi) = placement.bounding_box();
    let from_centroids = best_of(&tests, centroids(x, placement));
    let searched = match method {
        SearchMethod::Grid { resolution } => {
            if resolution < 2 {
                return Err(HdxError::Range(format!("grid resolution {resolution} < 2")));
            }
            let grid = Grid::new(lo, &hi, resolution);
            let counts = grid_counts(&grid, &tests, &simplex_bounds(x, placement));
            // flat index order is lexicographic in grid indices, hence in coordinates
            let (flat, &c) = counts
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("grid is nonempty");
            let idx: Vec<usize> = (0..grid.dim)
                .map(|k| (flat / resolution.pow((grid.dim - 1 - k) as u32)) % resolution)
                .collect();
            Some((c as usize, grid.point(&idx)))
        }
        SearchMethod::Sampled { samples, seed } => {
            let mut rng: StreamRng = stream_rng(seed, &[]);
            let cands = (0..samples)
                .map(|_| {
                    (0..placement.dim())
                        .map(|k| lo[k] + rng.gen::<f64>() * (hi[k] - lo[k]))
                        .collect()
                })
                .collect();
            best_of(&tests, cands)
        }
    };
    let best = match (from_centroids, searched) {
        (Some(a), Some(b)) => better(a, b),
        (a, b) => a.or(b).expect("at least one candidate"),
    };
    // recount with the same containment test that produced the candidate
    let covering = count_at(&tests, &best.1);
    debug_assert_eq!(covering, best.0);
    Ok(OverlapEstimate {
        point: best.1,
        covering,
        cells,
        fraction: covering as f64 / cells as f64,
        method,
        degenerate,
    })
}

/// Minimum overlap over random placements: an empirical, uncertified estimate.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricExpansionEstimate {
    pub estimate: f64,
    pub trials: usize,
    /// Overlap fraction of each placement, in trial order.
    pub fractions: Vec<f64>,
    pub certified: bool,
}

/// Runs `trials` placements, placement t drawn by `sampler` from the stream (seed, [t]).
pub fn geometric_expansion_estimate<F>(
    x: &SimplicialComplex,
    trials: usize,
    seed: u64,
    sampler: F,
    method: SearchMethod,
) -> Result<GeometricExpansionEstimate>
where
    F: Fn(&mut StreamRng) -> PointCloud,
{
    if trials == 0 {
        return Err(HdxError::InvalidSpec("trials must be at least 1".into()));
    }
    let mut fractions = Vec::with_capacity(trials);
    for t in 0..trials {
        let placement = sampler(&mut stream_rng(seed, &[t as u64]));
        fractions.push(affine_overlap(x, &placement, method)?.fraction);
    }
    let estimate = fractions.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(GeometricExpansionEstimate {
        estimate,
        trials,
        fractions,
        certified: false,
    })
}
