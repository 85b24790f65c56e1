//! Per-component exact solving and the algorithm dispatcher.

use crate::coloring::Coloring;
use crate::error::{Result, SscError};
use crate::graph::Graph;
use crate::oracle::{exists_ssc, OracleBudget};
use crate::param::cluster::MAX_CLUSTER_CAP;
use crate::param::twin_cover::{MAX_TWIN_COVER_CAP, MAX_TWIN_COVER_SOLVE};
use crate::param::vertex_cover::MAX_VERTEX_COVER_CAP;
use crate::param::{
    cluster_deletion_set, min_vertex_cover, modular_decomposition, solve_via_cluster_deletion,
    solve_via_modular_width, solve_via_neighborhood_diversity, solve_via_twin_cover,
    solve_via_vertex_cover, solve_with_vertex_cover, square_coloring_upper_bound, twin_cover,
    type_partition, StructuralSets, MAX_MODULAR_WIDTH,
};
use crate::treewidth::{nicify, solve_dp, solve_treewidth, TreeDecomposition, MAX_DP_COLORS};

/// Components at most this large go to the oracle, larger ones to the DP.
pub const ORACLE_COMPONENT_LIMIT: usize = 12;

/// Runs `f` on every connected component and merges the witnesses. Colours
/// may repeat across components since no closed neighbourhood spans two.
pub fn per_component<F>(g: &Graph, q: usize, mut f: F) -> Result<Option<Coloring>>
where
    F: FnMut(&Graph) -> Result<Option<Coloring>>,
{
    let mut colors = vec![0; g.n()];
    for comp in g.connected_components() {
        let sub = g.induced_subgraph(&comp);
        match f(&sub)? {
            Some(col) => {
                for (i, &v) in comp.iter().enumerate() {
                    colors[v] = col.color(i);
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Coloring::new(colors, q)?))
}

/// Exact decision for reduced instances inside the structural pipelines.
pub fn exact_decide(g: &Graph, q: usize) -> Result<Option<Coloring>> {
    let budget = OracleBudget::default();
    per_component(g, q, |c| {
        let square = square_coloring_upper_bound(c);
        if square.num_colors_used() <= q {
            Ok(Some(square.with_palette(q)?))
        } else if c.n() <= ORACLE_COMPONENT_LIMIT {
            exists_ssc(c, q, &budget)
        } else {
            solve_treewidth(c, q)
        }
    })
}

/// Solver selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Oracle,
    TwDp,
    VertexCover,
    NeighborhoodDiversity,
    Cluster,
    TwinCover,
    ModularWidth,
    Auto,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Oracle,
        Algorithm::TwDp,
        Algorithm::VertexCover,
        Algorithm::NeighborhoodDiversity,
        Algorithm::Cluster,
        Algorithm::TwinCover,
        Algorithm::ModularWidth,
        Algorithm::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::TwDp => "twdp",
            Algorithm::VertexCover => "vc",
            Algorithm::NeighborhoodDiversity => "nd",
            Algorithm::Cluster => "cluster",
            Algorithm::TwinCover => "twincover",
            Algorithm::ModularWidth => "mw",
            Algorithm::Auto => "auto",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = SscError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| SscError::Contract(format!("unknown algorithm '{s}'")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub budget: OracleBudget,
    /// Caller-supplied structural sets; validated before use.
    pub sets: StructuralSets,
    /// Caller-supplied tree decomposition for the DP.
    pub td: Option<TreeDecomposition>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub witness: Option<Coloring>,
    /// The algorithm that produced the answer (never `Auto`).
    pub algorithm: Algorithm,
}

/// Decides (g, q) with the selected algorithm. `Auto` uses the oracle up to
/// 12 vertices, otherwise the structural pipeline with the smallest
/// parameter, otherwise the treewidth DP.
pub fn solve(g: &Graph, q: usize, algo: Algorithm, opts: &SolveOptions) -> Result<SolveReport> {
    opts.sets.validate(g)?;
    let algorithm = match algo {
        Algorithm::Auto => pick_auto(g, opts)?,
        a => a,
    };
    let witness = run(g, q, algorithm, opts)?;
    Ok(SolveReport { witness, algorithm })
}

fn pick_auto(g: &Graph, opts: &SolveOptions) -> Result<Algorithm> {
    if g.n() <= ORACLE_COMPONENT_LIMIT {
        return Ok(Algorithm::Oracle);
    }
    let mut best: Option<(usize, Algorithm)> = None;
    let mut consider = |value: Option<usize>, a: Algorithm| {
        if let Some(v) = value {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, a));
            }
        }
    };
    let vc = match &opts.sets.vertex_cover {
        Some(x) => Some(x.len()),
        None => min_vertex_cover(g, MAX_VERTEX_COVER_CAP)?.map(|x| x.len()),
    };
    consider(vc, Algorithm::VertexCover);
    consider(Some(type_partition(g).len()), Algorithm::NeighborhoodDiversity);
    let cd = match &opts.sets.cluster_deletion {
        Some(x) => Some(x.len()),
        None => cluster_deletion_set(g, MAX_CLUSTER_CAP)?.map(|x| x.len()),
    };
    consider(cd.map(|k| k + 1), Algorithm::Cluster);
    let tc = match &opts.sets.twin_cover {
        Some(x) => Some(x.len()),
        None => twin_cover(g, MAX_TWIN_COVER_CAP)?.map(|x| x.len()),
    };
    consider(tc.filter(|&k| k <= MAX_TWIN_COVER_SOLVE), Algorithm::TwinCover);
    let mw = modular_decomposition(g).width();
    consider(Some(mw).filter(|&w| w <= MAX_MODULAR_WIDTH), Algorithm::ModularWidth);
    Ok(best.map_or(Algorithm::TwDp, |(_, a)| a))
}

fn run(g: &Graph, q: usize, algo: Algorithm, opts: &SolveOptions) -> Result<Option<Coloring>> {
    let found = |what: &str, x: Option<Vec<usize>>| {
        x.ok_or_else(|| SscError::Resource(format!("no {what} within the cap")))
    };
    match algo {
        Algorithm::Oracle => exists_ssc(g, q, &opts.budget),
        Algorithm::TwDp => {
            let square = square_coloring_upper_bound(g);
            if q > MAX_DP_COLORS && square.num_colors_used() <= q {
                return Ok(Some(square.with_palette(q)?));
            }
            match &opts.td {
                Some(td) => solve_dp(g, &nicify(td, g)?, q),
                None => solve_treewidth(g, q),
            }
        }
        Algorithm::VertexCover => match &opts.sets.vertex_cover {
            Some(x) => solve_with_vertex_cover(g, x, q),
            None => solve_via_vertex_cover(g, q),
        },
        Algorithm::NeighborhoodDiversity => solve_via_neighborhood_diversity(g, q),
        Algorithm::Cluster => {
            let x = match &opts.sets.cluster_deletion {
                Some(x) => x.clone(),
                None => found("cluster deletion set", cluster_deletion_set(g, MAX_CLUSTER_CAP)?)?,
            };
            solve_via_cluster_deletion(g, &x, q)
        }
        Algorithm::TwinCover => {
            let x = match &opts.sets.twin_cover {
                Some(x) => x.clone(),
                None => found("twin cover", twin_cover(g, MAX_TWIN_COVER_CAP)?)?,
            };
            solve_via_twin_cover(g, &x, q)
        }
        Algorithm::ModularWidth => solve_via_modular_width(g, q),
        Algorithm::Auto => unreachable!("resolved before dispatch"),
    }
}

/// χ_ssc by increasing q with the chosen algorithm; the square colouring
/// caps the search.
pub fn chromatic_number(g: &Graph, algo: Algorithm, opts: &SolveOptions) -> Result<(usize, Coloring, Algorithm)> {
    if g.n() == 0 {
        return Ok((0, Coloring::uncolored(0, 0), Algorithm::Oracle));
    }
    let upper = square_coloring_upper_bound(g);
    let cap = upper.num_colors_used();
    for q in 1..cap {
        let rep = solve(g, q, algo, opts)?;
        if let Some(w) = rep.witness {
            return Ok((q, w, rep.algorithm));
        }
    }
    let algorithm = match algo {
        Algorithm::Auto => pick_auto(g, opts)?,
        a => a,
    };
    Ok((cap, upper.with_palette(cap)?, algorithm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;

    #[test]
    fn dispatcher_agrees_across_algorithms() {
        let opts = SolveOptions::default();
        for g in [Graph::cycle(6), Graph::cycle(7), Graph::path(5), Graph::complete(4)] {
            for q in 1..=2 {
                let want = exists_ssc(&g, q, &opts.budget).unwrap().is_some();
                for a in Algorithm::ALL {
                    let rep = solve(&g, q, a, &opts).unwrap();
                    assert_eq!(rep.witness.is_some(), want, "{a} on {g:?} q={q}");
                    if let Some(w) = rep.witness {
                        assert!(is_valid(&g, &w));
                    }
                    assert_ne!(rep.algorithm, Algorithm::Auto);
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("bogus".parse::<Algorithm>().is_err());
    }

    #[test]
    fn chromatic_numbers() {
        let opts = SolveOptions::default();
        assert_eq!(chromatic_number(&Graph::cycle(4), Algorithm::Auto, &opts).unwrap().0, 2);
        assert_eq!(chromatic_number(&Graph::path(9), Algorithm::TwDp, &opts).unwrap().0, 1);
        let big = Graph::cycle(16);
        let (chi, w, a) = chromatic_number(&big, Algorithm::Auto, &opts).unwrap();
        assert_eq!(chi, 2);
        assert!(is_valid(&big, &w));
        assert_ne!(a, Algorithm::Oracle);
    }
}
