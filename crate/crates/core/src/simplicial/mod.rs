//! Finite ordered simplicial complexes, cochains and cohomology.
//!
//! Vertices are `0..n` and their integer labels fix the global order used
//! by every face formula. Simplices of each dimension are stored in
//! lexicographic order; cochain values are indexed by that order.

mod cochain;
mod cohomology;
mod complex;
pub mod corpus;
mod reduction;

pub use cochain::{Cochain, CohomologyClass};
pub use cohomology::{coboundary_matrix, cohomology, is_cohomologous, solve_coboundary, Cohomology};
pub use complex::{product, ProductComplex, SimplicialComplex, SimplicialMap, DEFAULT_DIMENSION_CAP};
