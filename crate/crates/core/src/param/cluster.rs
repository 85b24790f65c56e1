use std::collections::BTreeMap;

use crate::coloring::{is_valid, Coloring};
use crate::error::{Result, SscError};
use crate::graph::Graph;
use crate::solve::exact_decide;

pub const MAX_CLUSTER_CAP: usize = 12;

/// First induced P3 (a - b - c with a, c non-adjacent) among vertices not
/// in `removed`, centre-major order.
fn find_p3(g: &Graph, removed: &[bool]) -> Option<[usize; 3]> {
    for b in (0..g.n()).filter(|&v| !removed[v]) {
        let ns: Vec<usize> = g.neighbors(b).iter().copied().filter(|&w| !removed[w]).collect();
        for (i, &a) in ns.iter().enumerate() {
            for &c in &ns[i + 1..] {
                if !g.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn is_cluster_deletion_set(g: &Graph, x: &[usize]) -> bool {
    let mut removed = vec![false; g.n()];
    for &v in x {
        if v >= g.n() {
            return false;
        }
        removed[v] = true;
    }
    find_p3(g, &removed).is_none()
}

fn branch(g: &Graph, removed: &mut [bool], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(p3) = find_p3(g, removed) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in p3 {
        removed[v] = true;
        chosen.push(v);
        if branch(g, removed, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
        removed[v] = false;
    }
    false
}

/// Minimum set whose removal leaves a disjoint union of cliques.
pub fn cluster_deletion_set(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    if cap > MAX_CLUSTER_CAP {
        return Err(SscError::Contract(format!(
            "cluster deletion cap {cap} above {MAX_CLUSTER_CAP}"
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

/// Cliques of G - X, each sorted, ordered by smallest vertex.
fn cliques_outside(g: &Graph, x: &[usize]) -> Vec<Vec<usize>> {
    let mut in_x = vec![false; g.n()];
    for &v in x {
        in_x[v] = true;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_x[v]).collect();
    let sub = g.induced_subgraph(&rest);
    sub.connected_components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect()
}

fn x_mask(g: &Graph, v: usize, x: &[usize]) -> u32 {
    x.iter()
        .enumerate()
        .filter(|&(_, &w)| g.has_edge(v, w))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// X gets colours 1..k; every clique holding a vertex with no neighbour in
/// X colours one such vertex k+1. Needs k+1 colours.
fn constructive(g: &Graph, x: &[usize], q: usize) -> Result<Coloring> {
    let mut colors = vec![0; g.n()];
    for (i, &v) in x.iter().enumerate() {
        colors[v] = i + 1;
    }
    for clique in cliques_outside(g, x) {
        if let Some(&v) = clique.iter().find(|&&v| x_mask(g, v, x) == 0) {
            colors[v] = x.len() + 1;
        }
    }
    Coloring::new(colors, q)
}

/// Decision parameterized by a cluster deletion set X (|X| ≤ 12).
///
/// With q ≥ |X|+1 the answer is constructive. Otherwise two reductions run
/// before the exact solver: inside a clique, vertices with the same
/// neighbourhood in X are true twins and all but one are dropped; then, of
/// the cliques sharing a type (the set of X-neighbourhoods present), only
/// q·2^k + 1 are kept. Lifting re-colours dropped cliques by copying a kept
/// clique of the same type whose coloured vertices have no X-neighbours;
/// at most k·q kept cliques can fail that, so one always exists.
pub fn solve_via_cluster_deletion(g: &Graph, x: &[usize], q: usize) -> Result<Option<Coloring>> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if !is_cluster_deletion_set(g, &x) {
        return Err(SscError::Contract("supplied set is not a cluster deletion set".into()));
    }
    if x.len() > MAX_CLUSTER_CAP {
        return Err(SscError::Resource(format!(
            "cluster deletion set of size {} above {MAX_CLUSTER_CAP}",
            x.len()
        )));
    }
    if g.n() == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    if q == 0 {
        return Ok(None);
    }
    let k = x.len();
    if q > k {
        return constructive(g, &x, q).map(Some);
    }

    // twin rule: one representative per X-neighbourhood inside each clique
    // (dropped twins simply stay uncoloured when lifting)
    struct Clique {
        reps: BTreeMap<u32, usize>,
    }
    let cliques: Vec<Clique> = cliques_outside(g, &x)
        .into_iter()
        .map(|c| {
            let mut reps = BTreeMap::new();
            for v in c {
                reps.entry(x_mask(g, v, &x)).or_insert(v);
            }
            Clique { reps }
        })
        .collect();

    // type rule: keep q·2^k + 1 cliques per type
    let per_type = q.saturating_mul(1usize << k).saturating_add(1);
    let mut kept_by_type: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    let mut dropped: Vec<(usize, Vec<u32>)> = Vec::new();
    for (i, c) in cliques.iter().enumerate() {
        let ty: Vec<u32> = c.reps.keys().copied().collect();
        let slot = kept_by_type.entry(ty.clone()).or_default();
        if slot.len() < per_type {
            slot.push(i);
        } else {
            dropped.push((i, ty));
        }
    }

    let mut keep: Vec<usize> = x.clone();
    for members in kept_by_type.values() {
        for &i in members {
            keep.extend(cliques[i].reps.values().copied());
        }
    }
    keep.sort_unstable();
    let reduced = g.induced_subgraph(&keep);
    let Some(rc) = exact_decide(&reduced, q)? else {
        return Ok(None);
    };

    let mut colors = vec![0; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        colors[v] = rc.color(i);
    }
    for (i, ty) in dropped {
        let template = kept_by_type[&ty]
            .iter()
            .copied()
            .find(|&t| {
                cliques[t]
                    .reps
                    .iter()
                    .all(|(&m, &v)| m == 0 || colors[v] == 0)
            })
            .expect("a kept clique of the same type leaves X untouched");
        for (m, &v) in &cliques[i].reps {
            colors[v] = colors[cliques[template].reps[m]];
        }
    }
    let col = Coloring::new(colors, q)?;
    debug_assert!(is_valid(g, &col), "lifted colouring invalid");
    Ok(Some(col))
}
