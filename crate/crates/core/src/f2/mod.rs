//! F2 cochain machinery: coboundaries, cohomology ranks and exact expansion constants.

mod bits;
mod cochain;
mod expansion;

pub use bits::{BitVec, EchelonBasis, F2Matrix};
pub use cochain::{
    betti_f2, boundary, coboundary_matrix, coboundary_rank, delta, homologically_connected, norm_w,
    CohomologyReport, DegreeCohomology, F2Cochain,
};
pub use expansion::{
    coboundary_expansion, coboundary_space, cocycle_space, coset_norm, cosystolic_constants,
    sampled_coboundary_estimate, Expansion, Quotient, SampledEstimate, DEFAULT_EXHAUSTIVE_CAP,
};
