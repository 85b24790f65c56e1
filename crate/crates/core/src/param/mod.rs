//! Structural-parameter pipelines.

pub mod cluster;
pub mod modular;
pub mod modular_width;
pub mod neighborhood;
pub mod square_bound;
pub mod twin_cover;
pub mod vertex_cover;

pub use cluster::{cluster_deletion_set, is_cluster_deletion_set, solve_via_cluster_deletion};
pub use modular::{modular_decomposition, parse_modular_term, MdNode, ModularTree};
pub use modular_width::{solve_via_modular_width, MAX_MODULAR_WIDTH};
pub use neighborhood::{
    lift_nd_kernel, nd_kernelize, solve_via_neighborhood_diversity, type_partition, ClassKind,
    TypePartition,
};
pub use square_bound::square_coloring_upper_bound;
pub use twin_cover::{is_twin_cover, solve_via_twin_cover, twin_cover};
pub use vertex_cover::{
    is_vertex_cover, min_vertex_cover, solve_via_vertex_cover, solve_with_vertex_cover,
};

use crate::error::{Result, SscError};
use crate::graph::{content_lines, Graph};

/// Externally supplied or computed structural sets. Nothing here is trusted
/// until `validate` has run against the graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuralSets {
    pub vertex_cover: Option<Vec<usize>>,
    pub twin_cover: Option<Vec<usize>>,
    pub cluster_deletion: Option<Vec<usize>>,
}

impl StructuralSets {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        type Check = fn(&Graph, &[usize]) -> bool;
        let checks: [(&Option<Vec<usize>>, &str, Check); 3] = [
            (&self.vertex_cover, "vertex cover", is_vertex_cover),
            (&self.twin_cover, "twin cover", is_twin_cover),
            (&self.cluster_deletion, "cluster deletion set", is_cluster_deletion_set),
        ];
        for (set, name, ok) in checks {
            if let Some(x) = set {
                if !ok(g, x) {
                    return Err(SscError::Contract(format!("supplied {name} is invalid")));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (tag, set) in [
            ("vc", &self.vertex_cover),
            ("tc", &self.twin_cover),
            ("cd", &self.cluster_deletion),
        ] {
            if let Some(x) = set {
                out.push_str(tag);
                for v in x {
                    out.push_str(&format!(" {v}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Lines `vc <v...>`, `tc <v...>`, `cd <v...>` (0-indexed, `#` comments).
pub fn parse_structural_sets(text: &str) -> Result<StructuralSets> {
    let mut sets = StructuralSets::default();
    for (line, toks) in content_lines(text) {
        let slot = match toks[0] {
            "vc" => &mut sets.vertex_cover,
            "tc" => &mut sets.twin_cover,
            "cd" => &mut sets.cluster_deletion,
            other => return Err(SscError::parse(line, format!("unknown set tag '{other}'"))),
        };
        if slot.is_some() {
            return Err(SscError::parse(line, format!("duplicate '{}' line", toks[0])));
        }
        let vs = toks[1..]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| SscError::parse(line, format!("bad vertex '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        *slot = Some(vs);
    }
    Ok(sets)
}
