//! Construction, randomization and certification of high-dimensional expanders.
//!
//! * [`complex`]: pure simplicial complexes with incidence, degrees, links and weights.
//! * [`f2`]: F2 coboundaries, cohomology ranks, exact coboundary and cosystolic constants.
//! * [`spectral`]: weighted Laplacians, Hodge decomposition, spectral gaps, local-to-global
//!   bounds, Cheeger and Ramanujan checks, and lift-averaging decay on the universal cover.
//! * [`random`]: the ER, LM, Y and W random models and a reproducible sweep harness.
//! * [`overlap`]: geometric overlap estimates for affine placements in R^2 and R^3.

pub mod combinatorics;
pub mod complex;
pub mod error;
pub mod f2;
pub mod overlap;
pub mod random;
pub mod report;
pub mod spectral;

pub use complex::{
    incidence_number, Face, Link, Rational, SimplicialComplex, Vertex, WeightFunction,
};
pub use error::{HdxError, Result};
