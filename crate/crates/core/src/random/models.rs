//! Generators for the random complex models.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rng::stream_rng;
use super::steiner::gen_steiner_w;
use crate::combinatorics::Combinations;
use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{HdxError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Random graph G(n, p).
    Er,
    /// Full (d-1)-skeleton plus independent d-cells with probability p.
    Lm,
    /// Union of k uniform partitions of [n] into (d+1)-sets.
    Y,
    /// Full (d-1)-skeleton plus k independent greedy partial Steiner systems.
    W,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Er => "er",
            Model::Lm => "lm",
            Model::Y => "y",
            Model::W => "w",
        })
    }
}

impl FromStr for Model {
    type Err = HdxError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Model::Er),
            "lm" => Ok(Model::Lm),
            "y" => Ok(Model::Y),
            "w" => Ok(Model::W),
            other => Err(HdxError::InvalidSpec(format!("unknown model {other:?}"))),
        }
    }
}

pub const DEFAULT_DELTA0: f64 = 0.1;
pub const DEFAULT_RETRY_CAP: usize = 20;

/// Parameters of one random complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub n: usize,
    pub d: usize,
    /// Cell probability for ER and LM.
    pub p: f64,
    /// Number of partitions (Y) or greedy copies (W).
    pub k: usize,
    /// Stopping exponent of the greedy stage (W).
    pub delta0: f64,
    pub seed: u64,
    pub retry_cap: usize,
}

impl ModelSpec {
    pub fn new(model: Model, n: usize, d: usize) -> Self {
        Self {
            model,
            n,
            d,
            p: 0.0,
            k: 1,
            delta0: DEFAULT_DELTA0,
            seed: 0,
            retry_cap: DEFAULT_RETRY_CAP,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_delta0(mut self, delta0: f64) -> Self {
        self.delta0 = delta0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HdxError::InvalidSpec(m));
        match self.model {
            Model::Er | Model::Lm => {
                if !(0.0..=1.0).contains(&self.p) {
                    return bad(format!("p = {} not in [0, 1]", self.p));
                }
                if self.model == Model::Er && self.d != 1 {
                    return bad("the ER model is 1-dimensional".into());
                }
            }
            Model::Y | Model::W => {
                if self.k == 0 {
                    return bad("k must be at least 1".into());
                }
                if self.model == Model::Y && !self.n.is_multiple_of(self.d + 1) {
                    return Err(HdxError::Divisibility {
                        n: self.n,
                        d: self.d,
                    });
                }
                if self.model == Model::W && (self.delta0.is_nan() || self.delta0 <= 0.0) {
                    return bad(format!("delta0 = {} must be positive", self.delta0));
                }
            }
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.n < self.d + 1 {
            return bad(format!("n = {} too small for d = {}", self.n, self.d));
        }
        Ok(())
    }
}

/// A generated complex plus model-specific diagnostics.
#[derive(Clone, Debug)]
pub struct Generated {
    pub complex: SimplicialComplex,
    /// W only: uncovered (d-1)-cells left by each greedy copy.
    pub uncovered: Vec<usize>,
    /// W only: greedy attempts used per copy (1 = no retry).
    pub attempts: Vec<usize>,
}

pub fn generate(spec: &ModelSpec) -> Result<Generated> {
    spec.validate()?;
    let plain = |complex| Generated {
        complex,
        uncovered: Vec::new(),
        attempts: Vec::new(),
    };
    match spec.model {
        Model::Er => gen_erdos_renyi(spec).map(plain),
        Model::Lm => gen_linial_meshulam(spec).map(plain),
        Model::Y => gen_partition_y(spec).map(plain),
        Model::W => gen_steiner_w(spec),
    }
}

/// All faces of dimension < d on `0..n`, as face sets indexed by dimension + 1.
pub(crate) fn full_skeleton_sets(n: usize, d: usize) -> Vec<HashSet<Vec<Vertex>>> {
    let mut sets: Vec<HashSet<Vec<Vertex>>> =
        (0..=d).map(|s| Combinations::new(n, s).collect()).collect();
    sets.push(HashSet::new());
    sets
}

/// G(n, p): the LM model at d = 1, sharing its draw sequence.
pub fn gen_erdos_renyi(spec: &ModelSpec) -> Result<SimplicialComplex> {
    if spec.d != 1 {
        return Err(HdxError::InvalidSpec(
            "the ER model is 1-dimensional".into(),
        ));
    }
    gen_linial_meshulam(spec)
}

/// Full (d-1)-skeleton; each (d+1)-subset, in lexicographic order, is kept when one uniform
/// draw in [0, 1) falls below p.
pub fn gen_linial_meshulam(spec: &ModelSpec) -> Result<SimplicialComplex> {
    if !(0.0..=1.0).contains(&spec.p) || spec.d == 0 || spec.n < spec.d + 1 {
        return Err(HdxError::InvalidSpec(format!("bad LM parameters {spec:?}")));
    }
    let mut rng = stream_rng(spec.seed, &[]);
    let mut sets = full_skeleton_sets(spec.n, spec.d);
    for cell in Combinations::new(spec.n, spec.d + 1) {
        if rng.gen::<f64>() < spec.p {
            sets[spec.d + 1].insert(cell);
        }
    }
    Ok(SimplicialComplex::from_face_sets(spec.n, spec.d, sets))
}

/// Union of k independent uniform partitions of [n] into blocks of size d+1.
pub fn gen_partition_y(spec: &ModelSpec) -> Result<SimplicialComplex> {
    if !spec.n.is_multiple_of(spec.d + 1) {
        return Err(HdxError::Divisibility {
            n: spec.n,
            d: spec.d,
        });
    }
    let mut rng = stream_rng(spec.seed, &[]);
    let mut perm: Vec<Vertex> = (0..spec.n as Vertex).collect();
    let mut cells = Vec::with_capacity(spec.k * spec.n / (spec.d + 1));
    for _ in 0..spec.k {
        perm.shuffle(&mut rng);
        for block in perm.chunks(spec.d + 1) {
            let mut b = block.to_vec();
            b.sort_unstable();
            cells.push(b);
        }
    }
    SimplicialComplex::from_faces(spec.n, spec.d, &cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        let g = gen_erdos_renyi(&ModelSpec::new(Model::Er, 6, 1).with_p(1.0)).unwrap();
        assert!(g.same_faces(&SimplicialComplex::complete(6, 1).unwrap()));
        let e = gen_erdos_renyi(&ModelSpec::new(Model::Er, 6, 1).with_p(0.0)).unwrap();
        assert_eq!((e.count(0), e.count(1)), (6, 0));
        assert!(!e.is_pure());
    }

    #[test]
    fn er_edge_count_is_binomial() {
        let n = 50;
        let p = 0.2;
        let m = (n * (n - 1) / 2) as f64;
        let (mean, sd) = (p * m, (m * p * (1.0 - p)).sqrt());
        let within = (0..100)
            .filter(|&seed| {
                let g = gen_erdos_renyi(&ModelSpec::new(Model::Er, n, 1).with_p(p).with_seed(seed))
                    .unwrap();
                (g.count(1) as f64 - mean).abs() <= 3.0 * sd
            })
            .count();
        // 3σ covers ~99.7% of trials
        assert!(within >= 98, "{within}/100 within 3σ");
    }

    #[test]
    fn lm_matches_er_at_dimension_one() {
        for seed in 0..10 {
            let spec = ModelSpec::new(Model::Er, 20, 1).with_p(0.3).with_seed(seed);
            let lm = ModelSpec {
                model: Model::Lm,
                ..spec.clone()
            };
            assert!(gen_erdos_renyi(&spec)
                .unwrap()
                .same_faces(&gen_linial_meshulam(&lm).unwrap()));
        }
    }

    #[test]
    fn lm_full_probability_is_complete() {
        let x = gen_linial_meshulam(&ModelSpec::new(Model::Lm, 7, 2).with_p(1.0)).unwrap();
        assert!(x.same_faces(&SimplicialComplex::complete(7, 2).unwrap()));
    }

    #[test]
    fn lm_triangle_count() {
        let n = 30;
        let p: f64 = 0.1;
        let m = 4060.0;
        let sd = (m * p * (1.0 - p)).sqrt();
        let mut within = 0;
        for seed in 0..50 {
            let x = gen_linial_meshulam(&ModelSpec::new(Model::Lm, n, 2).with_p(p).with_seed(seed))
                .unwrap();
            assert_eq!(x.count(1), 435);
            if (x.count(2) as f64 - p * m).abs() <= 3.0 * sd {
                within += 1;
            }
        }
        assert!(within >= 49);
    }

    #[test]
    fn partition_model() {
        let x = gen_partition_y(&ModelSpec::new(Model::Y, 6, 2).with_k(1).with_seed(4)).unwrap();
        assert_eq!(x.count(2), 2);
        assert_eq!(x.count(1), 6);
        assert!(x.is_pure());
        let spec = ModelSpec::new(Model::Y, 7, 2).with_k(2);
        assert!(matches!(
            spec.validate(),
            Err(HdxError::Divisibility { n: 7, d: 2 })
        ));
        for seed in 0..50 {
            let y = gen_partition_y(&ModelSpec::new(Model::Y, 30, 2).with_k(3).with_seed(seed))
                .unwrap();
            assert!(y.degree_profile().0 <= 3);
        }
    }

    #[test]
    fn model_names_parse() {
        for m in [Model::Er, Model::Lm, Model::Y, Model::W] {
            assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        }
        assert!("q".parse::<Model>().is_err());
    }
}
