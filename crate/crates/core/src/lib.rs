//! Distance-preserving edge contraction on weighted paths and trees.
//!
//! Contracting an edge fuses its endpoints and shortens every path through
//! it. The planners here choose new weights for the surviving edges that
//! minimise the summed distortion of pairwise distances, and the oracles
//! check those choices by brute force.
//!
//! ```
//! use edgemerge_core::{load_graph, merge_single_edge, total_error, ContractionRequest, EdgeId};
//!
//! let path = load_graph("a b 2\nb c 3\nc d 4\nd e 1").unwrap();
//! let plan = merge_single_edge(&path, EdgeId(1)).unwrap();
//! let request = ContractionRequest::new(&path, [EdgeId(1)], None).unwrap();
//! let report = total_error(&path, &request, &plan.redistribution).unwrap();
//! assert_eq!(report.total, plan.predicted_error);
//! ```

pub mod error;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod path;
pub mod tree;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{
    contract, derive_merged_sets, load_graph, write_edge_list, ContractedGraph, ContractionRequest, Edge, EdgeId,
    GraphKind, MergedSets, Mode, Origin, PathLayout, Supernode, VertexId, WeightedGraph,
};
pub use metrics::{
    abs_pair_bound_check, marking_unit_error, total_error, unit_error, ErrorEvaluator, ErrorReport, Redistribution,
};
pub use oracle::{OracleVerdict, Verdict, Witness};
pub use path::{
    left_error_table, merge_independent, merge_independent_in_order, merge_single_edge, merge_subpath,
    merge_supernode_pair, sequential_left_marking, PathCase, PathMergePlan,
};
pub use tree::{
    marking_delta, marking_redistribution, optimal_marking, optimal_partial, plan_tree, profile, MarkOp, MarkState,
    Marking, NeighborProfile, Side, TreeMergePlan,
};
pub use weight::{format_weight, parse_weight, Weight};
