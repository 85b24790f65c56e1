//! Exact and parameterized solvers for subset square colouring.

pub mod bitset;
pub mod coloring;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod param;
pub mod solve;
pub mod treewidth;

pub use bitset::Bitset;
pub use coloring::{is_valid, parse_coloring, verify, Coloring, ValidityReport, ViolationKind};
pub use error::{Result, SscError};
pub use graph::{parse_graph, Diameter, Graph};
pub use oracle::{chi_ssc, exists_ssc, min_dominating_set, OracleBudget};
pub use solve::{chromatic_number, exact_decide, solve, Algorithm, SolveOptions, SolveReport};
