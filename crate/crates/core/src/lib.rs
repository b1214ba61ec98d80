//! k-factor computation by augmenting trails.
//!
//! Starting from the empty subgraph, the solver repeatedly finds an
//! alternating trail between two vertices of deficient degree and flips the
//! membership of its edges, raising the degree of both ends by one. Trails
//! are found in a layered graph of darts (oriented edge copies); trails that
//! traverse an edge in both directions are broken up by deleting the
//! entering or leaving dart of the offending odd cycle.
//!
//! ```
//! use kfactor::{compute_k_factor, Graph};
//!
//! let g = Graph::petersen();
//! let outcome = compute_k_factor(&g, 2).unwrap();
//! assert!(outcome.is_factor_found());
//! ```

pub mod graph;
pub mod harness;
pub mod klimited;
pub mod search;
pub mod solver;

pub use graph::{parse_graph, Dart, EdgeId, Graph, GraphError, ParseError, VertexId};
pub use klimited::{parse_edge_set, write_edge_set, KLimitedSubgraph, Trail, TrailDefect};
pub use search::{find_augmenting_trail, LayeredDartGraph, SearchStats};
pub use solver::{
    compute_bipartite_k_factor, compute_k_factor, feasibility_precheck, verify_factor, SolveOutcome, SolveStatus,
};
