//! Real-coefficient spectral theory of weighted complexes and regular graphs.

mod gap;
mod garland;
mod graph;
mod kamber;
mod operators;

pub use gap::{
    harmonic_dimension, hodge_decompose, is_spectral_expander, real_betti, spectral_gap,
    spectral_gap_with, spectral_gaps, up_spectrum, HodgeDecomposition, HodgeResiduals, EIGEN_TOL,
};
pub use garland::{garland_check, GarlandReport};
pub use graph::{
    check_cheeger_buser, cheeger_constant, points_to_lines_report, ramanujan_certify, CheegerBuser,
    Graph, PointsToLines, RamanujanVerdict, CHEEGER_MAX_VERTICES,
};
pub use kamber::{lift_decay_profile, solve_p, weyl_p, weyl_p_symbol, AffineType, LiftDecay};
pub use operators::{
    column_space_basis, least_squares, numerical_rank, orthogonal_complement, signed_coboundary,
    sorted_eigenvalues, OperatorBundle, RealCochain, RANK_RTOL,
};
