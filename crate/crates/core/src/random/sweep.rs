//! Reproducible Monte Carlo sweeps over a model parameter.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::models::{generate, Model, ModelSpec};
use super::rng::derive_seed;
use crate::complex::SimplicialComplex;
use crate::error::{HdxError, Result};
use crate::f2::homologically_connected;

/// z-score of a two-sided 95% interval.
const Z95: f64 = 1.959_963_984_540_054;

/// The event whose probability is estimated at each grid point.
#[derive(Clone)]
pub enum Predicate {
    /// The 1-skeleton is connected (every vertex reachable).
    Connected,
    /// H^{d-1}(X, F2) = 0.
    HomologicallyConnected,
    Custom(
        String,
        Arc<dyn Fn(&SimplicialComplex) -> bool + Send + Sync>,
    ),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Connected => f.write_str("Connected"),
            Predicate::HomologicallyConnected => f.write_str("HomologicallyConnected"),
            Predicate::Custom(name, _) => write!(f, "Custom({name})"),
        }
    }
}

impl Predicate {
    pub fn eval(&self, x: &SimplicialComplex) -> bool {
        match self {
            Predicate::Connected => is_connected(x),
            Predicate::HomologicallyConnected => homologically_connected(x),
            Predicate::Custom(_, f) => f(x),
        }
    }
}

/// Union-find connectivity of the 1-skeleton over all n vertices.
pub fn is_connected(x: &SimplicialComplex) -> bool {
    let n = x.n_vertices();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut components = n;
    for e in x.faces(1) {
        let (a, b) = (e.vertices()[0] as usize, e.vertices()[1] as usize);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Model, n, d, base seed and fixed parameters; the swept one is overwritten per point.
    pub template: ModelSpec,
    /// Values of p (ER, LM) or k (Y, W).
    pub grid: Vec<f64>,
    pub trials: usize,
    pub predicate: Predicate,
}

impl SweepSpec {
    /// The `ModelSpec` for grid index `g`, trial `t`, with its derived seed.
    pub fn trial_spec(&self, g: usize, t: usize) -> ModelSpec {
        let mut s = self.template.clone();
        match s.model {
            Model::Er | Model::Lm => s.p = self.grid[g],
            Model::Y | Model::W => s.k = self.grid[g].round() as usize,
        }
        s.seed = derive_seed(self.template.seed, &[g as u64, t as u64]);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridPoint {
    pub value: f64,
    pub successes: usize,
    /// Trials that produced a complex (failed generations are excluded).
    pub trials: usize,
    pub failures: usize,
    pub probability: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub model: Model,
    pub n: usize,
    pub d: usize,
    pub predicate: String,
    pub points: Vec<GridPoint>,
    /// Wall-clock time; kept out of serialized output so reruns compare byte-for-byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Wilson score interval at 95% for `k` successes out of `n`.
pub fn wilson_interval(k: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Runs every (grid point, trial) on a pool of `workers` threads. Results do not depend on
/// the worker count: each trial owns its seed and the aggregation walks trials in order.
pub fn threshold_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    if spec.trials == 0 {
        return Err(HdxError::InvalidSpec("trials must be at least 1".into()));
    }
    if spec.grid.is_empty() {
        return Err(HdxError::InvalidSpec("empty parameter grid".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HdxError::InvalidSpec(e.to_string()))?;
    let jobs: Vec<(usize, usize)> = (0..spec.grid.len())
        .flat_map(|g| (0..spec.trials).map(move |t| (g, t)))
        .collect();
    let outcomes: Vec<Option<bool>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(g, t)| {
                generate(&spec.trial_spec(g, t))
                    .ok()
                    .map(|x| spec.predicate.eval(&x.complex))
            })
            .collect()
    });
    let points = spec
        .grid
        .iter()
        .enumerate()
        .map(|(g, &value)| {
            let slice = &outcomes[g * spec.trials..(g + 1) * spec.trials];
            let failures = slice.iter().filter(|o| o.is_none()).count();
            let trials = spec.trials - failures;
            let successes = slice.iter().filter(|o| **o == Some(true)).count();
            let probability = if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            };
            let (ci_low, ci_high) = wilson_interval(successes, trials);
            GridPoint {
                value,
                successes,
                trials,
                failures,
                probability,
                ci_low,
                ci_high,
            }
        })
        .collect();
    Ok(SweepResult {
        model: spec.template.model,
        n: spec.template.n,
        d: spec.template.d,
        predicate: format!("{:?}", spec.predicate),
        points,
        elapsed: start.elapsed(),
    })
}

impl SweepResult {
    /// CSV with one row per grid point.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["value", "successes", "trials", "p_hat", "ci_low", "ci_high"])?;
        for p in &self.points {
            w.write_record([
                p.value.to_string(),
                p.successes.to_string(),
                p.trials.to_string(),
                p.probability.to_string(),
                p.ci_low.to_string(),
                p.ci_high.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| HdxError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
