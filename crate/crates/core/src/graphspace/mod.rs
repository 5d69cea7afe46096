//! Formal sums of fat graphs, brute-force enumeration, the edge-contraction
//! operator and the graph-level check of the quadratic recursion.

mod contract;
mod enumerate;
mod graphsum;
mod recursion;

pub use contract::{contract_graph, contract_k1};
pub use enumerate::{
    enumerate, fold_matchings, graph_sum_to_tpoly, oracle_all_genera, oracle_correlator,
    verify_oracle, MatchingStats,
};
pub use graphsum::GraphSum;
pub use recursion::{
    abstract_rhs, verify_abstract_range, verify_abstract_recursion, AbstractCorrelators,
};
