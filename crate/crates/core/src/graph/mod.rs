//! Graphs as finite instance spaces: agents sit on nodes and may move to
//! neighbours.

mod construct;
mod domset;
mod instance;
mod io;
mod learn;
mod structure;

pub use construct::{make_clique_lower_bound, make_star_partition_lower_bound, GroupWiring};
pub use domset::{greedy_dominating_set, is_dominating_set, teach_risk_averse_student};
pub use instance::{graph_power, CoverageStats, GraphInstance};
pub use io::{parse_edge_list, parse_labeling, write_edge_list, write_labeling};
pub use learn::{
    all_covered, coverage_failure_probability, enabling_sample_size, is_covered, joint_sample_size,
    learn_graph_conservative, n_has_sampled_positive_neighbor, sample_nodes, zero_error_sample_size,
};
pub use structure::Graph;
