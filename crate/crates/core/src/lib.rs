//! Matchings in k-uniform hypergraphs under minimum codegree conditions.
//!
//! The crate provides a bitset hypergraph representation, an exact
//! branch-and-bound matching solver, the greedy, absorbing, almost-perfect
//! and extremal constructions, instance generators, and a pipeline that
//! combines them into a near perfect matching search with an exact fallback.
//!
//! ```
//! use hypermatch::{generators::barrier, exact::{matching_number, SolverBudget}};
//!
//! let h = barrier(3, 10, 2).unwrap();
//! assert_eq!(h.min_codegree(), 2);
//! let nu = matching_number(&h, SolverBudget::default());
//! assert_eq!(nu.payload.unwrap().len(), 2);
//! ```

pub mod absorbing;
pub mod almost;
pub mod campaign;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod format;
pub mod generators;
pub mod greedy;
pub mod hypergraph;
pub mod pipeline;
pub mod report;
pub mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{EdgeId, Hypergraph, Matching, Relabeling};
pub use pipeline::{matching_at_least_delta, near_perfect_matching, PipelineConfig};
pub use report::{Branch, RunReport};
pub use vertex_set::VertexSet;
