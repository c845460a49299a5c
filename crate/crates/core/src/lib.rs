//! Edge fragility, classical spanners and resilient spanner augmentation
//! for undirected graphs with positive edge weights.

pub mod cli;
pub mod connectivity;
pub mod experiment;
pub mod fragility;
pub mod generators;
pub mod graph;
pub mod io;
mod parallel;
pub mod paths;
pub mod report;
pub mod resilient;
pub mod spanners;

pub use connectivity::{bridges, is_connected, two_edge_connected_components};
pub use fragility::{
    all_fragilities, check_girth_bound, edge_fragility, fragility_oracle, Fragility, FragilityMap,
};
pub use graph::{Distance, Edge, EdgeId, Graph, GraphError, Path, VertexId};
pub use io::{parse_edge_list, write_edge_list, EdgeListError};
pub use parallel::SINGLE_THREAD_ENV;
pub use paths::{distance_avoiding_edge, girth, shortest_path, sssp};
pub use resilient::{
    backup_cycle, cycle_union_stats, fragility_classes, make_resilient, verify_resilient,
    BackupCycle, ResilientError, ResilientSpanner,
};
pub use spanners::{
    additive2_spanner, fault_tolerant_spanner, greedy_spanner, verify_fault_tolerance,
    verify_spanner, Spanner, SpannerError,
};
