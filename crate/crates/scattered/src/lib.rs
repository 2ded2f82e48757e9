//! Solvers for the d-Scattered Set problem: pick vertices that are pairwise at
//! shortest-path distance at least `d`.
//!
//! The crate bundles an exact counting dynamic program over nice tree
//! decompositions, a vertex-cover parameterized algorithm, an approximation
//! scheme over rounded distance states, brute-force oracles, tree-decomposition
//! tooling and generators for hardness-reduction instances.

pub mod decomp;
pub mod error;
pub mod gadgets;
pub mod graph_core;
pub mod oracle;
pub mod tw_approx;
pub mod tw_exact;
pub mod vc_fpt;

pub use error::{Error, Result};
pub use graph_core::{DistanceOracle, VertexSet, WeightedGraph, INF};
