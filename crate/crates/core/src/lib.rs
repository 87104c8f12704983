//! Recognition of generalized Cayley graphs of finite magmas.
//!
//! A finite labeled digraph is tested against graph-theoretic
//! characterizations of Cayley graphs of left-cancellative magmas,
//! left-quasigroups, quasigroups, cancellative monoids and semigroups, and
//! groups. For every positive answer the operation on the vertex set is
//! synthesized and returned as a checkable [`classify::Certificate`].
//!
//! ```
//! use cayley_core::{classify, graph::Graph};
//!
//! let even = Graph::parse("p\ta\tq\np\tb\tp\nq\ta\tp\nq\tb\tq\n").unwrap();
//! let report = classify::classify(&even, &Default::default());
//! assert!(report.verdict(classify::CayleyClass::GroupCayley).is_yes());
//! ```

pub mod algebra;
pub mod classify;
pub mod coloring;
pub mod dot;
pub mod graph;
pub mod isomorphism;
pub mod properties;
pub mod rewriting;
pub mod synthesis;

pub use graph::{Graph, GraphError, MarkedSubgraph};
