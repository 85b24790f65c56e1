use crate::bitset::Bitset;
use crate::coloring::{is_valid, Coloring};
use crate::error::{Result, SscError};
use crate::graph::Graph;

pub const MAX_TWIN_COVER_CAP: usize = 12;
pub const MAX_TWIN_COVER_SOLVE: usize = 10;

/// N[u] = N[v].
pub fn true_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.closed_neighbor_bits(u) == g.closed_neighbor_bits(v)
}

/// Edges that must be covered: those not joining true twins.
fn hard_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| !true_twins(g, u, v)).collect()
}

pub fn is_twin_cover(g: &Graph, x: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in x {
        if v >= g.n() {
            return false;
        }
        inside[v] = true;
    }
    hard_edges(g).iter().all(|&(u, v)| inside[u] || inside[v])
}

fn branch(edges: &[(usize, usize)], inside: &mut [bool], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !inside[u] && !inside[v]) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        inside[w] = true;
        chosen.push(w);
        if branch(edges, inside, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
        inside[w] = false;
    }
    false
}

/// Minimum twin cover: every edge has an endpoint in X or joins true twins.
pub fn twin_cover(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    if cap > MAX_TWIN_COVER_CAP {
        return Err(SscError::Contract(format!(
            "twin cover cap {cap} above {MAX_TWIN_COVER_CAP}"
        )));
    }
    let edges = hard_edges(g);
    for k in 0..=cap {
        let mut inside = vec![false; g.n()];
        let mut chosen = Vec::new();
        if branch(&edges, &mut inside, k, &mut chosen) {
            chosen.sort_unstable();
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

/// Backtracking over the vertices that may carry colours (X, then clique
/// representatives). Two coloured vertices at distance at most two must
/// differ; that is exactly the "no repeat in a closed neighbourhood" rule.
struct Search<'a> {
    sq: &'a [Bitset],
    q: usize,
    order: Vec<usize>,
    /// minimum colour for order[i] (1 for forced representatives)
    floor: Vec<usize>,
    colors: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, v: usize, c: usize) -> bool {
        c == 0 || self.sq[v].iter().all(|w| self.colors[w] != c)
    }
}

/// Decision parameterized by a twin cover X (|X| ≤ 10).
///
/// With q ≥ max(|X|, 1) the answer is constructive. Otherwise every colouring
/// of X is tried in lexicographic order. The components of G - X are cliques
/// of true twins, so each keeps one representative and at most it is
/// coloured. Cliques not dominated from X must colour their representative
/// (the set W); among the others, one clique per X-neighbourhood suffices to
/// dominate the rest of X (the set U). W and U are then coloured by
/// backtracking.
pub fn solve_via_twin_cover(g: &Graph, x: &[usize], q: usize) -> Result<Option<Coloring>> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if !is_twin_cover(g, &x) {
        return Err(SscError::Contract("supplied set is not a twin cover".into()));
    }
    if x.len() > MAX_TWIN_COVER_SOLVE {
        return Err(SscError::Resource(format!(
            "twin cover of size {} above {MAX_TWIN_COVER_SOLVE}",
            x.len()
        )));
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    if q == 0 {
        return Ok(None);
    }
    let k = x.len();
    let mut in_x = vec![false; n];
    for &v in &x {
        in_x[v] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let cliques: Vec<Vec<usize>> = g
        .induced_subgraph(&rest)
        .connected_components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect();
    let reps: Vec<usize> = cliques.iter().map(|c| c[0]).collect();

    if q >= k.max(1) {
        let mut colors = vec![0; n];
        for (i, &v) in x.iter().enumerate() {
            colors[v] = i + 1;
        }
        for &r in &reps {
            if !g.neighbors(r).iter().any(|&w| in_x[w]) {
                colors[r] = 1;
            }
        }
        return Ok(Some(Coloring::new(colors, q)?));
    }

    let sq_graph = g.square();
    let sq: Vec<Bitset> = (0..n).map(|v| sq_graph.neighbor_bits(v).clone()).collect();
    let x_nbrs: Vec<Vec<usize>> = reps
        .iter()
        .map(|&r| g.neighbors(r).iter().copied().filter(|&w| in_x[w]).collect())
        .collect();

    let mut chi = vec![0usize; k];
    let mut colors = vec![0usize; n];
    loop {
        if let Some(col) = extend(g, &x, &reps, &x_nbrs, &sq, q, &mut colors) {
            let col = Coloring::new(col, q)?;
            debug_assert!(is_valid(g, &col));
            return Ok(Some(col));
        }
        // next colouring of X (lexicographic, last coordinate fastest),
        // skipping values that already clash inside X
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            let v = x[i];
            colors[v] = 0;
            let mut next = chi[i] + 1;
            while next <= q && !x[..i].iter().all(|&w| !sq[v].contains(w) || colors[w] != next) {
                next += 1;
            }
            if next <= q {
                chi[i] = next;
                colors[v] = next;
                for j in i + 1..k {
                    chi[j] = 0;
                    colors[x[j]] = 0;
                }
                break;
            }
            chi[i] = 0;
        }
    }
}

/// Completes a fixed colouring of X (already in `colors`) by colouring
/// clique representatives, or reports that none exists.
fn extend(
    g: &Graph,
    x: &[usize],
    reps: &[usize],
    x_nbrs: &[Vec<usize>],
    sq: &[Bitset],
    q: usize,
    colors: &mut [usize],
) -> Option<Vec<usize>> {
    let mut w = Vec::new();
    let mut u = Vec::new();
    let mut seen_masks = std::collections::BTreeSet::new();
    for (i, &r) in reps.iter().enumerate() {
        if x_nbrs[i].iter().all(|&v| colors[v] == 0) {
            w.push(r);
        } else {
            let mask: Vec<usize> = x_nbrs[i].clone();
            if seen_masks.insert(mask) {
                u.push(r);
            }
        }
    }
    // X vertices not dominated inside X
    let undominated: Vec<usize> = x
        .iter()
        .copied()
        .filter(|&v| colors[v] == 0 && g.neighbors(v).iter().all(|&y| colors[y] == 0))
        .collect();
    // U representatives are only useful next to an undominated X vertex
    u.retain(|&r| undominated.iter().any(|&v| g.has_edge(r, v)));

    let mut s = Search {
        sq,
        q,
        order: w.iter().chain(&u).copied().collect(),
        floor: w.iter().map(|_| 1).chain(u.iter().map(|_| 0)).collect(),
        colors: colors.to_vec(),
    };
    let done = |s: &Search| {
        undominated
            .iter()
            .all(|&v| g.neighbors(v).iter().any(|&y| s.colors[y] != 0))
    };
    fn go(s: &mut Search, i: usize, done: &dyn Fn(&Search) -> bool) -> bool {
        if i == s.order.len() {
            return done(s);
        }
        let v = s.order[i];
        for c in s.floor[i]..=s.q {
            if s.fits(v, c) {
                s.colors[v] = c;
                if go(s, i + 1, done) {
                    return true;
                }
                s.colors[v] = 0;
            }
        }
        false
    }
    if go(&mut s, 0, &done) {
        Some(s.colors)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exists_ssc, OracleBudget};

    #[test]
    fn covers() {
        assert_eq!(twin_cover(&Graph::complete(5), 12).unwrap().unwrap(), Vec::<usize>::new());
        assert_eq!(twin_cover(&Graph::path(3), 12).unwrap().unwrap(), vec![1]);
        assert_eq!(twin_cover(&Graph::path(4), 12).unwrap().unwrap().len(), 2);
        assert!(twin_cover(&Graph::path(4), 13).is_err());
    }

    #[test]
    fn solver_examples() {
        // K4 on 0..4 plus pendant 4 attached to 0
        let mut edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        edges.push((0, 4));
        let g = Graph::from_edges(5, &edges).unwrap();
        assert!(is_twin_cover(&g, &[0]));
        let w = solve_via_twin_cover(&g, &[0], 1).unwrap().unwrap();
        assert!(is_valid(&g, &w));

        let c4 = Graph::cycle(4);
        for x in [[0, 2], [1, 3]] {
            assert!(solve_via_twin_cover(&c4, &x, 1).unwrap().is_none());
        }
        assert!(solve_via_twin_cover(&c4, &[0, 1], 1).is_err());

        let cluster = Graph::complete(3).disjoint_union(&Graph::complete(2));
        assert!(solve_via_twin_cover(&cluster, &[], 1).unwrap().is_some());
    }

    #[test]
    fn agrees_with_oracle_on_small_cases() {
        let b = OracleBudget::default();
        for g in [Graph::cycle(5), Graph::cycle(7), Graph::path(6), Graph::complete(4)] {
            let x = twin_cover(&g, 12).unwrap().unwrap();
            for q in 1..=3 {
                let want = exists_ssc(&g, q, &b).unwrap().is_some();
                assert_eq!(solve_via_twin_cover(&g, &x, q).unwrap().is_some(), want, "{g:?} q={q}");
            }
        }
    }
}
