//! Largest compatible subsets of binary characters, solved as minimum
//! vertex cover on the character conflict graph.
//!
//! The main solver is a genetic algorithm whose chromosome covers only the
//! critical vertices of the graph; the rest of the graph falls apart into
//! trees and simple cycles that are covered exactly. A 2-approximation and
//! an exact branch-and-bound are provided as baselines, and [`bench`]
//! runs paired comparisons on random graphs.

pub mod baselines;
pub mod bench;
pub mod error;
pub mod graph;
pub mod hybrid_ga;
pub mod phylogeny;
pub mod rng;
pub mod solve;
pub mod structured;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use solve::{CoverSolution, Solver, SolverKind};
pub use structured::VertexSet;
