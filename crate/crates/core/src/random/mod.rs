//! Random complex models and threshold sweeps.

mod models;
mod rng;
mod steiner;
mod sweep;

pub use models::{
    gen_erdos_renyi, gen_linial_meshulam, gen_partition_y, generate, Generated, Model, ModelSpec,
    DEFAULT_DELTA0, DEFAULT_RETRY_CAP,
};
pub use rng::{derive_seed, stream_rng, StreamRng};
pub use steiner::{gen_steiner_w, steiner_greedy, SteinerStage};
pub use sweep::{
    is_connected, threshold_sweep, wilson_interval, GridPoint, Predicate, SweepResult, SweepSpec,
};
