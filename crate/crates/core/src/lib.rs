//! Exact adjacency rank, skew-rank and cycle-space invariants of oriented
//! graphs, the lower bound `sr ≥ r − 2d`, and a structural test for the
//! graphs that attain it.
//!
//! ```
//! use skewrank::{classify_lower_optimal, construct_lower_optimal};
//!
//! let og = construct_lower_optimal(&[6], 2, 1).unwrap();
//! let v = classify_lower_optimal(&og);
//! assert!(v.direct && v.structural);
//! ```

pub mod error;
pub mod generate;
pub mod graph;
pub mod graphfile;
pub mod invariants;
pub mod linalg;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
pub use generate::{
    construct_lower_optimal, enumerate_oriented_graphs, oriented_graph_count, oriented_graph_from_index,
    random_oriented_graph, random_tree, random_unicyclic,
};
pub use graph::{Graph, OrientedGraph, Relabeling, VertexSet};
pub use graphfile::{parse_graph_file, to_graph_file, ParseError};
pub use invariants::{
    adjacency_matrix, bound_report, cyclomatic_d, invariant_report, matching_number, orientation_class, rank_r,
    skew_adjacency_matrix, skew_rank, BoundCheck, BoundStatus, InvariantReport, OrientationClass,
};
pub use linalg::IntMatrix;
pub use structure::{
    check_lower_optimal_consequences, classify_lower_optimal, compress, delta_reduce, delta_step, is_lower_optimal,
    CompressedGraph, ReductionTrace, Verdict,
};
pub use suite::{run_suite, CheckGroup, SuiteConfig, SuiteReport};
