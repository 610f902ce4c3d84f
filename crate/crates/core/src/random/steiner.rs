//! Greedy stage of the random partial Steiner system construction.
//!
//! A d-cell is legal with respect to a chosen set when it shares no (d-1)-cell with any
//! chosen cell. The first cell is uniform over all (d+1)-subsets; every later cell is
//! uniform over the currently legal ones. The stage stops once at most n^{d - δ0}
//! (d-1)-cells remain uncovered, and aborts if no legal cell is left before that.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use super::models::{full_skeleton_sets, Generated, ModelSpec};
use super::rng::{derive_seed, stream_rng};
use crate::combinatorics::{binomial, colex_rank, Combinations};
use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{HdxError, Result};

/// Rejection draws tried per step before counting the legal cells explicitly.
const REJECTION_TRIES: usize = 100;
/// Below this legal fraction the sampler keeps an explicit legal list.
const MIN_ACCEPTANCE: f64 = 0.01;

/// Output of one greedy run.
#[derive(Clone, Debug, PartialEq)]
pub struct SteinerStage {
    /// Chosen d-cells in selection order, each ascending.
    pub cells: Vec<Vec<Vertex>>,
    /// (d-1)-cells not in the boundary of any chosen cell.
    pub uncovered: usize,
    /// The stopping threshold n^{d - δ0}.
    pub target: f64,
}

struct Legality {
    d: usize,
    covered: Vec<bool>,
    uncovered: usize,
}

impl Legality {
    fn is_legal(&self, cell: &[Vertex]) -> bool {
        (0..=self.d).all(|pos| !self.covered[facet_rank(cell, pos)])
    }

    fn cover(&mut self, cell: &[Vertex]) {
        for pos in 0..=self.d {
            let r = facet_rank(cell, pos);
            debug_assert!(!self.covered[r]);
            self.covered[r] = true;
            self.uncovered -= 1;
        }
    }
}

fn facet_rank(cell: &[Vertex], pos: usize) -> usize {
    let mut f: Vec<Vertex> = cell.to_vec();
    f.remove(pos);
    colex_rank(&f)
}

/// One run of the greedy stage. Fails with `AbortedGreedy` when no legal cell is left.
pub fn steiner_greedy(n: usize, d: usize, seed: u64, delta0: f64) -> Result<SteinerStage> {
    if d == 0 || n < d + 1 {
        return Err(HdxError::InvalidSpec(format!(
            "greedy stage needs n >= d + 1 >= 2, got n={n}, d={d}"
        )));
    }
    let mut rng = stream_rng(seed, &[]);
    let ridges = binomial(n as u64, d as u64) as usize;
    let total = binomial(n as u64, d as u64 + 1) as f64;
    let target = (n as f64).powf(d as f64 - delta0);
    let mut state = Legality {
        d,
        covered: vec![false; ridges],
        uncovered: ridges,
    };
    let mut cells = Vec::new();
    // once the legal fraction is small, keep the legal cells explicitly
    let mut legal_list: Option<Vec<Vec<Vertex>>> = None;

    loop {
        let pick = match legal_list.as_mut() {
            Some(list) => {
                list.retain(|c| state.is_legal(c));
                if list.is_empty() {
                    None
                } else {
                    Some(list.swap_remove(rng.gen_range(0..list.len())))
                }
            }
            None => {
                let mut found = None;
                for _ in 0..REJECTION_TRIES {
                    let mut c: Vec<Vertex> = sample(&mut rng, n, d + 1)
                        .into_iter()
                        .map(|v| v as Vertex)
                        .collect();
                    c.sort_unstable();
                    if state.is_legal(&c) {
                        found = Some(c);
                        break;
                    }
                }
                if found.is_none() {
                    let mut list: Vec<Vec<Vertex>> = Combinations::new(n, d + 1)
                        .filter(|c| state.is_legal(c))
                        .collect();
                    if !list.is_empty() {
                        found = Some(list.swap_remove(rng.gen_range(0..list.len())));
                    }
                    if (list.len() as f64) / total < MIN_ACCEPTANCE {
                        legal_list = Some(list);
                    }
                }
                found
            }
        };
        let Some(cell) = pick else {
            return Err(HdxError::AbortedGreedy { attempts: 1 });
        };
        state.cover(&cell);
        cells.push(cell);
        if state.uncovered as f64 <= target {
            break;
        }
    }
    Ok(SteinerStage {
        cells,
        uncovered: state.uncovered,
        target,
    })
}

/// Union of k independent greedy outputs as the d-cells, on the full (d-1)-skeleton.
/// Copy `c`, attempt `a` runs on the stream `derive_seed(seed, [c, a])`.
pub fn gen_steiner_w(spec: &ModelSpec) -> Result<Generated> {
    let mut sets = full_skeleton_sets(spec.n, spec.d);
    let mut top: HashSet<Vec<Vertex>> = HashSet::new();
    let mut uncovered = Vec::with_capacity(spec.k);
    let mut attempts = Vec::with_capacity(spec.k);
    for copy in 0..spec.k {
        let mut done = None;
        for attempt in 0..spec.retry_cap.max(1) {
            let s = derive_seed(spec.seed, &[copy as u64, attempt as u64]);
            match steiner_greedy(spec.n, spec.d, s, spec.delta0) {
                Ok(stage) => {
                    done = Some((stage, attempt + 1));
                    break;
                }
                Err(HdxError::AbortedGreedy { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let Some((stage, used)) = done else {
            return Err(HdxError::AbortedGreedy {
                attempts: spec.retry_cap,
            });
        };
        uncovered.push(stage.uncovered);
        attempts.push(used);
        top.extend(stage.cells);
    }
    sets[spec.d + 1] = top;
    Ok(Generated {
        complex: SimplicialComplex::from_face_sets(spec.n, spec.d, sets),
        uncovered,
        attempts,
    })
}
