//! Local-to-global bound: λ^(d-1)(X) ≥ 1 + dε - d with ε the worst vertex-link gap of
//! the (d-2)-cells.

use serde::Serialize;

use super::gap::{spectral_gap, EIGEN_TOL};
use super::graph::Graph;
use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{HdxError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct GarlandReport {
    pub d: usize,
    /// min over F ∈ X^(d-2) of λ^(0)(lk F); 0 when some link is disconnected.
    pub epsilon: f64,
    /// 1 + dε - d.
    pub bound: f64,
    /// λ^(d-1)(X).
    pub lambda_top: f64,
    pub holds: bool,
    /// The bound is ≤ 0, so the inequality says nothing.
    pub vacuous: bool,
    /// (d-2)-cells whose link graph is disconnected.
    pub disconnected_links: Vec<Vec<Vertex>>,
    pub tolerance: f64,
}

pub fn garland_check(x: &SimplicialComplex) -> Result<GarlandReport> {
    let d = x.dim();
    if d < 2 {
        return Err(HdxError::Dimension(format!(
            "the local-to-global bound needs d >= 2, got {d}"
        )));
    }
    x.require_pure()?;
    let mut epsilon = f64::INFINITY;
    let mut disconnected_links = Vec::new();
    for f in x.faces(d as isize - 2) {
        let lk = x.link(f)?;
        if !Graph::from_complex(&lk.complex).is_connected() {
            disconnected_links.push(f.vertices().to_vec());
            epsilon = 0.0;
            continue;
        }
        epsilon = epsilon.min(spectral_gap(&lk.complex, 0)?);
    }
    let lambda_top = spectral_gap(x, d as isize - 1)?;
    let bound = 1.0 + d as f64 * epsilon - d as f64;
    Ok(GarlandReport {
        d,
        epsilon,
        bound,
        lambda_top,
        holds: lambda_top >= bound - EIGEN_TOL,
        vacuous: bound <= 0.0,
        disconnected_links,
        tolerance: EIGEN_TOL,
    })
}
