//! JSON analysis reports. Exact values are rationals rendered "p/q" (or "inf"); anything
//! not certified is tagged `"kind": "estimate"`.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{HdxError, Result};
use crate::f2::{
    betti_f2, coboundary_expansion, cosystolic_constants, sampled_coboundary_estimate, Expansion,
    DEFAULT_EXHAUSTIVE_CAP,
};
use crate::random::stream_rng;
use crate::spectral::{
    check_cheeger_buser, cheeger_constant, garland_check, ramanujan_certify, real_betti,
    spectral_gaps, up_spectrum, CheegerBuser, GarlandReport, Graph, RamanujanVerdict,
    CHEEGER_MAX_VERTICES, EIGEN_TOL,
};

/// Largest cochain space whose full up-Laplacian spectrum is written out.
const SPECTRUM_DUMP_MAX: usize = 2000;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub f2: bool,
    pub spectral: bool,
    pub garland: bool,
    pub ramanujan: bool,
    pub cap: usize,
    /// Fail with `ExactnessUnavailable` instead of falling back to estimates.
    pub require_exact: bool,
    pub epsilon: Option<f64>,
    /// Random starts of the sampled estimator.
    pub samples: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            f2: true,
            spectral: true,
            garland: true,
            ramanujan: true,
            cap: DEFAULT_EXHAUSTIVE_CAP,
            require_exact: false,
            epsilon: None,
            samples: 256,
            seed: 0,
        }
    }
}

/// A reported quantity and how much to trust it.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Value {
    Exact {
        value: Expansion,
        /// Omitted when the value is infinite.
        #[serde(skip_serializing_if = "Option::is_none")]
        approx: Option<f64>,
    },
    Estimate {
        estimate: Option<f64>,
        samples: usize,
    },
    Unavailable {
        reason: String,
    },
}

impl From<Expansion> for Value {
    fn from(e: Expansion) -> Self {
        Value::Exact {
            value: e,
            approx: e.finite().map(|_| e.as_f64()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub n: usize,
    pub d: usize,
    pub pure: bool,
    /// |X^(i)| for i = 0..=d.
    pub counts: Vec<usize>,
    pub max_vertex_degree: u64,
    pub max_upper_degree: u64,
}

impl ComplexSummary {
    pub fn of(x: &SimplicialComplex) -> Self {
        let (v, u) = x.degree_profile();
        Self {
            n: x.n_vertices(),
            d: x.dim(),
            pure: x.is_pure(),
            counts: (0..=x.dim() as isize).map(|i| x.count(i)).collect(),
            max_vertex_degree: v,
            max_upper_degree: u,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionEntry {
    pub dim: usize,
    /// 𝒽_i.
    pub coboundary: Value,
    /// μ_i, least norm of a non-trivial cocycle class.
    pub mu: Value,
    /// ν_i, expansion relative to cocycles.
    pub nu: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    /// β_i(X, F2), i = 0..=d, reduced in degree 0.
    pub betti_f2: Vec<usize>,
    pub cap: usize,
    pub dimensions: Vec<ExpansionEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub lambda1: f64,
    pub adjacency_spectrum: Vec<f64>,
    /// Exact h as "p/q"; absent above the vertex cap.
    pub cheeger: Option<String>,
    pub cheeger_buser: Option<CheegerBuser>,
    pub ramanujan: Option<RamanujanVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpanderVerdict {
    pub epsilon: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub tolerance: f64,
    /// λ^(i) for i = 0..d-1.
    pub gaps: Vec<f64>,
    /// Ascending spectra of Δ^up_i, i = 0..d-1, when small enough to list.
    pub up_spectra: Vec<Option<Vec<f64>>>,
    /// β_i(X, R) for i = 0..=d.
    pub real_betti: Vec<usize>,
    pub spectral_expander: Option<ExpanderVerdict>,
    pub graph: Option<GraphReport>,
    pub garland: Option<GarlandReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub complex: ComplexSummary,
    pub expansion: Option<ExpansionReport>,
    pub spectral: Option<SpectralReport>,
    /// Sections that could not be computed, with the reason.
    pub skipped: Vec<String>,
}

pub fn analyze(x: &SimplicialComplex, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut skipped = Vec::new();
    let expansion = if opts.f2 {
        Some(expansion_report(x, opts)?)
    } else {
        None
    };
    let spectral = if !opts.spectral {
        None
    } else if !x.is_pure() {
        skipped.push("spectral: complex is not pure".to_string());
        None
    } else {
        Some(spectral_report(x, opts)?)
    };
    Ok(AnalysisReport {
        complex: ComplexSummary::of(x),
        expansion,
        spectral,
        skipped,
    })
}

pub fn expansion_report(x: &SimplicialComplex, opts: &AnalysisOptions) -> Result<ExpansionReport> {
    let coh = betti_f2(x);
    let mut dimensions = Vec::new();
    for i in 0..x.dim() {
        let ii = i as isize;
        let coboundary = match coboundary_expansion(x, ii, opts.cap) {
            Ok(e) => Value::from(e),
            Err(HdxError::ExactnessUnavailable { .. }) if !opts.require_exact => {
                let mut rng = stream_rng(opts.seed, &[i as u64]);
                let s = sampled_coboundary_estimate(x, ii, opts.samples, &mut rng)?;
                Value::Estimate {
                    estimate: s.value,
                    samples: s.samples,
                }
            }
            Err(e) => return Err(e),
        };
        let (mu, nu) = match cosystolic_constants(x, ii, opts.cap) {
            Ok((mu, nu)) => (Value::from(mu), Value::from(nu)),
            Err(HdxError::ExactnessUnavailable { size, cap }) if !opts.require_exact => {
                let reason = format!("{size} cells exceed the exhaustive cap {cap}");
                (
                    Value::Unavailable {
                        reason: reason.clone(),
                    },
                    Value::Unavailable { reason },
                )
            }
            Err(e) => return Err(e),
        };
        dimensions.push(ExpansionEntry {
            dim: i,
            coboundary,
            mu,
            nu,
        });
    }
    Ok(ExpansionReport {
        betti_f2: (0..=x.dim() as isize).map(|i| coh.betti(i)).collect(),
        cap: opts.cap,
        dimensions,
    })
}

pub fn spectral_report(x: &SimplicialComplex, opts: &AnalysisOptions) -> Result<SpectralReport> {
    let gaps = spectral_gaps(x)?;
    let up_spectra = (0..x.dim() as isize)
        .map(|i| {
            if x.count(i) <= SPECTRUM_DUMP_MAX {
                up_spectrum(x, i).ok()
            } else {
                None
            }
        })
        .collect();
    let spectral_expander = opts.epsilon.map(|eps| ExpanderVerdict {
        epsilon: eps,
        holds: gaps.iter().all(|&g| g >= eps - EIGEN_TOL),
    });
    let graph = if x.dim() == 1 {
        Some(graph_report(x, &gaps, opts)?)
    } else {
        None
    };
    let garland = if opts.garland && x.dim() >= 2 {
        Some(garland_check(x)?)
    } else {
        None
    };
    Ok(SpectralReport {
        tolerance: EIGEN_TOL,
        gaps,
        up_spectra,
        real_betti: real_betti(x),
        spectral_expander,
        graph,
        garland,
    })
}

fn graph_report(
    x: &SimplicialComplex,
    gaps: &[f64],
    opts: &AnalysisOptions,
) -> Result<GraphReport> {
    let g = Graph::from_complex(x);
    let cheeger = if g.n() <= CHEEGER_MAX_VERTICES && g.n() >= 2 {
        let h = cheeger_constant(&g)?;
        Some(format!("{}/{}", h.numer(), h.denom()))
    } else {
        None
    };
    let regular_connected = g.regular_degree().is_some() && g.is_connected();
    let cheeger_buser = if regular_connected && g.n() <= CHEEGER_MAX_VERTICES {
        Some(check_cheeger_buser(&g)?)
    } else {
        None
    };
    let ramanujan = if opts.ramanujan && regular_connected {
        Some(ramanujan_certify(&g)?)
    } else {
        None
    };
    Ok(GraphReport {
        lambda1: gaps.first().copied().unwrap_or(f64::INFINITY),
        adjacency_spectrum: g.adjacency_spectrum(),
        cheeger,
        cheeger_buser,
        ramanujan,
    })
}
