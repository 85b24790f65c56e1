use crate::coloring::Coloring;
use crate::error::{Result, SscError};
use crate::graph::Graph;
use crate::solve::exact_decide;

pub const MAX_VERTEX_COVER_CAP: usize = 20;

pub fn is_vertex_cover(g: &Graph, x: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in x {
        if v >= g.n() {
            return false;
        }
        inside[v] = true;
    }
    g.edges().all(|(u, v)| inside[u] || inside[v])
}

/// Branching on a maximum-degree vertex w: either w is in the cover or all
/// of N(w) is.
fn branch(g: &Graph, removed: &mut Vec<bool>, budget: usize, chosen: &mut Vec<usize>) -> bool {
    let live_deg = |v: usize, removed: &[bool]| {
        g.neighbors(v).iter().filter(|&&w| !removed[w]).count()
    };
    let pick = (0..g.n())
        .filter(|&v| !removed[v])
        .map(|v| (live_deg(v, removed), v))
        .filter(|&(d, _)| d > 0)
        .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
    let Some((d, w)) = pick else {
        return true;
    };
    if budget == 0 {
        return false;
    }

    removed[w] = true;
    chosen.push(w);
    if branch(g, removed, budget - 1, chosen) {
        return true;
    }
    chosen.pop();
    removed[w] = false;

    if d <= budget && d > 1 {
        let nbrs: Vec<usize> = g.neighbors(w).iter().copied().filter(|&x| !removed[x]).collect();
        for &x in &nbrs {
            removed[x] = true;
            chosen.push(x);
        }
        if branch(g, removed, budget - d, chosen) {
            return true;
        }
        for &x in &nbrs {
            removed[x] = false;
            chosen.pop();
        }
    }
    false
}

/// Minimum vertex cover of size at most `cap`, sorted ascending.
pub fn min_vertex_cover(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    if cap > MAX_VERTEX_COVER_CAP {
        return Err(SscError::Contract(format!(
            "vertex cover cap {cap} above {MAX_VERTEX_COVER_CAP}"
        )));
    }
    for k in 0..=cap {
        let mut removed = vec![false; g.n()];
        let mut chosen = Vec::new();
        if branch(g, &mut removed, k, &mut chosen) {
            chosen.sort_unstable();
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

/// Cover vertices get distinct colours 1..k, isolated vertices colour 1.
/// Valid whenever q ≥ max(k, 1 if there are isolated vertices).
fn cover_coloring(g: &Graph, x: &[usize], q: usize) -> Option<Coloring> {
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let need = x.len().max(usize::from(!isolated.is_empty()));
    if q < need {
        return None;
    }
    let mut colors = vec![0; g.n()];
    for (i, &v) in x.iter().enumerate() {
        colors[v] = i + 1;
    }
    for v in isolated {
        colors[v] = 1;
    }
    Coloring::new(colors, q).ok()
}

/// Decision with a computed minimum vertex cover (cap 20).
pub fn solve_via_vertex_cover(g: &Graph, q: usize) -> Result<Option<Coloring>> {
    let x = min_vertex_cover(g, MAX_VERTEX_COVER_CAP)?.ok_or_else(|| {
        SscError::Resource(format!("no vertex cover within {MAX_VERTEX_COVER_CAP}"))
    })?;
    solve_with_vertex_cover(g, &x, q)
}

/// Decision with a caller-supplied vertex cover. When q covers the cover
/// size the answer is constructive; otherwise the instance goes to the exact
/// solver (its treewidth is at most |X|).
pub fn solve_with_vertex_cover(g: &Graph, x: &[usize], q: usize) -> Result<Option<Coloring>> {
    if !is_vertex_cover(g, x) {
        return Err(SscError::Contract("supplied set is not a vertex cover".into()));
    }
    if g.n() == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if let Some(col) = cover_coloring(g, &x, q) {
        return Ok(Some(col));
    }
    exact_decide(g, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;

    #[test]
    fn cover_sizes() {
        assert_eq!(min_vertex_cover(&Graph::path(4), 20).unwrap().unwrap().len(), 2);
        assert_eq!(min_vertex_cover(&Graph::complete(5), 20).unwrap().unwrap().len(), 4);
        assert_eq!(min_vertex_cover(&Graph::cycle(6), 20).unwrap().unwrap().len(), 3);
        assert_eq!(min_vertex_cover(&Graph::empty(3), 20).unwrap().unwrap().len(), 0);
        assert!(min_vertex_cover(&Graph::complete(5), 3).unwrap().is_none());
        assert!(min_vertex_cover(&Graph::path(3), 21).is_err());
    }

    #[test]
    fn constructive_and_delegated() {
        let star = Graph::from_edges(7, &(1..7).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        let w = solve_via_vertex_cover(&star, 1).unwrap().unwrap();
        assert_eq!(w.colors()[0], 1);
        assert!(is_valid(&star, &w));

        let c6 = Graph::cycle(6);
        let w = solve_via_vertex_cover(&c6, 3).unwrap().unwrap();
        assert!(is_valid(&c6, &w));

        assert!(solve_via_vertex_cover(&Graph::cycle(4), 1).unwrap().is_none());
    }

    #[test]
    fn rejects_non_cover() {
        assert!(matches!(
            solve_with_vertex_cover(&Graph::path(3), &[0], 1),
            Err(SscError::Contract(_))
        ));
    }
}
