//! Tree decompositions and the colouring DP that runs over them.

pub mod decomposition;
pub mod dp;
pub mod nice;

pub use decomposition::{heuristic_tree_decomposition, parse_td, Strategy, TreeDecomposition};
pub use dp::{solve_dp, solve_dp_with, solve_treewidth, DpOptions, Trace, MAX_DP_COLORS};
pub use nice::{nicify, NiceNode, NiceTreeDecomposition, NodeKind};
