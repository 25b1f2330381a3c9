//! Exact counting polynomials of graph flows and tensions, their lattice
//! polytopes, and executable checks of the coefficient bounds they satisfy.

pub mod error;
pub mod graph;
pub mod poly;
pub mod vectors;
pub mod constraints;
pub mod counting;
pub mod polytope;
pub mod tutte;
pub mod families;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{classify, parse_edge_list, spanning_forest, Graph, GraphClassification, SpanningForest};
pub use poly::Polynomial;
pub use vectors::{CoeffVector, VectorKind};
pub use counting::{polynomial_of, CountKind, CountPolynomial, Degeneracy};
pub use polytope::{HPolytope, Hyperplane, Region};
pub use families::generate_family;
pub use verify::{verify_graph, CheckName, CheckResult, CheckStatus, TheoremReport, VerifyOptions};
