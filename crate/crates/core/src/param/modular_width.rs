use crate::coloring::{is_valid, Coloring};
use crate::error::{Result, SscError};
use crate::graph::Graph;
use crate::param::modular::{modular_decomposition, MdNode};

/// Largest Prime node (child count) the solver will enumerate.
pub const MAX_MODULAR_WIDTH: usize = 8;

fn first_vertex(node: &MdNode) -> usize {
    match node {
        MdNode::Vertex(v) => *v,
        _ => first_vertex(&node.children()[0]),
    }
}

fn quotient_masks(quotient: &Graph) -> (Vec<u32>, Vec<u32>) {
    let p = quotient.n();
    let adj: Vec<u32> = (0..p)
        .map(|i| quotient.neighbors(i).iter().fold(0, |m, &j| m | 1 << j))
        .collect();
    let sq: Vec<u32> = (0..p)
        .map(|i| {
            let mut m = adj[i];
            for j in quotient.neighbors(i) {
                m |= adj[*j];
            }
            m & !(1 << i)
        })
        .collect();
    (adj, sq)
}

/// A minimum dominating set of the subgraph induced by `node`.
///
/// Union: union of the children's sets. Join: a single dominating vertex of
/// some child if one exists, else one vertex from each of two children.
/// Prime: choose the set T of children that receive a vertex; every child
/// outside T needs a neighbour in T, and a child in T without a neighbour in
/// T must dominate itself.
fn min_dom(node: &MdNode) -> Result<Vec<usize>> {
    match node {
        MdNode::Vertex(v) => Ok(vec![*v]),
        MdNode::Union(children) => {
            let mut out = Vec::new();
            for c in children {
                out.extend(min_dom(c)?);
            }
            Ok(out)
        }
        MdNode::Join(children) => {
            for c in children {
                let d = min_dom(c)?;
                if d.len() == 1 {
                    return Ok(d);
                }
            }
            Ok(vec![first_vertex(&children[0]), first_vertex(&children[1])])
        }
        MdNode::Prime { children, quotient } => {
            let p = children.len();
            if p > MAX_MODULAR_WIDTH {
                return Err(width_error(p));
            }
            let doms = children.iter().map(min_dom).collect::<Result<Vec<_>>>()?;
            let (adj, _) = quotient_masks(quotient);
            let mut best: Option<(usize, u32)> = None;
            for t in 1u32..1 << p {
                if (0..p).any(|i| t >> i & 1 == 0 && adj[i] & t == 0) {
                    continue;
                }
                let cost: usize = (0..p)
                    .filter(|&i| t >> i & 1 == 1)
                    .map(|i| if adj[i] & t != 0 { 1 } else { doms[i].len() })
                    .sum();
                if best.is_none_or(|(b, _)| cost < b) {
                    best = Some((cost, t));
                }
            }
            let (_, t) = best.expect("T = all children always dominates");
            let mut out = Vec::new();
            for i in (0..p).filter(|&i| t >> i & 1 == 1) {
                if adj[i] & t != 0 {
                    out.push(first_vertex(&children[i]));
                } else {
                    out.extend(&doms[i]);
                }
            }
            Ok(out)
        }
    }
}

fn width_error(p: usize) -> SscError {
    SscError::Resource(format!("prime node with {p} children above {MAX_MODULAR_WIDTH}"))
}

/// Colours `node` as a whole graph (no outside neighbours). Returns false if
/// no colouring with q colours exists.
fn color_top(node: &MdNode, q: usize, colors: &mut [usize]) -> Result<bool> {
    match node {
        MdNode::Vertex(v) => {
            colors[*v] = 1;
            Ok(true)
        }
        MdNode::Union(children) => {
            for c in children {
                if !color_top(c, q, colors)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        // every vertex sees all other children, so all coloured vertices
        // need distinct colours: one universal vertex, or one vertex in each
        // of two children
        MdNode::Join(children) => {
            for c in children {
                let d = min_dom(c)?;
                if d.len() == 1 {
                    colors[d[0]] = 1;
                    return Ok(true);
                }
            }
            if q < 2 {
                return Ok(false);
            }
            colors[first_vertex(&children[0])] = 1;
            colors[first_vertex(&children[1])] = 2;
            Ok(true)
        }
        MdNode::Prime { children, quotient } => color_prime(children, quotient, q, colors),
    }
}

/// Prime root with children M_1..M_p and quotient H. Writing S_i for the
/// coloured part of M_i: each S_i is rainbow, S_i and S_j use disjoint colours
/// whenever i, j are within distance two in H, and M_i is dominated iff some
/// H-neighbour has S_j ≠ ∅ or S_i dominates G[M_i]. Only |S_i| ∈ {0, 1, γ_i}
/// matters, so the search is over those sizes plus a set colouring of H².
fn color_prime(children: &[MdNode], quotient: &Graph, q: usize, colors: &mut [usize]) -> Result<bool> {
    let p = children.len();
    if p > MAX_MODULAR_WIDTH {
        return Err(width_error(p));
    }
    let doms = children.iter().map(min_dom).collect::<Result<Vec<_>>>()?;
    let (adj, sq) = quotient_masks(quotient);
    let options: Vec<Vec<usize>> = doms
        .iter()
        .map(|d| {
            let mut o = vec![0, 1, d.len()];
            o.dedup();
            o.retain(|&s| s <= q);
            o
        })
        .collect();

    let mut pick = vec![0usize; p];
    loop {
        let sizes: Vec<usize> = (0..p).map(|i| options[i][pick[i]]).collect();
        let nonempty: u32 = (0..p).filter(|&i| sizes[i] > 0).fold(0, |m, i| m | 1 << i);
        let dominated = (0..p).all(|i| adj[i] & nonempty != 0 || sizes[i] >= doms[i].len());
        if dominated {
            if let Some(sets) = set_coloring(&sizes, &sq, q) {
                for i in 0..p {
                    let targets = if sizes[i] == doms[i].len() {
                        doms[i].clone()
                    } else {
                        vec![first_vertex(&children[i])]
                    };
                    for (&v, &c) in targets.iter().zip(&sets[i]) {
                        colors[v] = c;
                    }
                }
                return Ok(true);
            }
        }
        // next size vector, last child fastest
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Assigns child i a set of `sizes[i]` colours from 1..=q, disjoint from the
/// sets of its H²-neighbours.
fn set_coloring(sizes: &[usize], sq: &[u32], q: usize) -> Option<Vec<Vec<usize>>> {
    let items: Vec<usize> = (0..sizes.len())
        .flat_map(|i| std::iter::repeat_n(i, sizes[i]))
        .collect();
    let mut used = vec![0u64; sizes.len()];
    let mut chosen = vec![0usize; items.len()];

    fn go(k: usize, max_used: usize, items: &[usize], sq: &[u32], q: usize, used: &mut [u64], chosen: &mut [usize]) -> bool {
        if k == items.len() {
            return true;
        }
        let i = items[k];
        let lo = if k > 0 && items[k - 1] == i { chosen[k - 1] + 1 } else { 1 };
        // colours are interchangeable: never skip past max_used + 1
        for c in lo..=q.min(max_used + 1) {
            let clash = (0..used.len()).any(|j| sq[i] >> j & 1 == 1 && used[j] >> c & 1 == 1);
            if clash {
                continue;
            }
            used[i] |= 1 << c;
            chosen[k] = c;
            if go(k + 1, max_used.max(c), items, sq, q, used, chosen) {
                return true;
            }
            used[i] &= !(1 << c);
        }
        false
    }

    if !go(0, 0, &items, sq, q, &mut used, &mut chosen) {
        return None;
    }
    let mut sets = vec![Vec::new(); sizes.len()];
    for (k, &i) in items.iter().enumerate() {
        sets[i].push(chosen[k]);
    }
    Some(sets)
}

/// Decision via modular width (bottom-up on the modular decomposition).
pub fn solve_via_modular_width(g: &Graph, q: usize) -> Result<Option<Coloring>> {
    let tree = modular_decomposition(g);
    let Some(root) = &tree.root else {
        return Ok(Some(Coloring::uncolored(0, q)));
    };
    let w = tree.width();
    if w > MAX_MODULAR_WIDTH {
        return Err(SscError::Resource(format!(
            "modular width {w} above {MAX_MODULAR_WIDTH}"
        )));
    }
    if q == 0 {
        return Ok(None);
    }
    let mut colors = vec![0; g.n()];
    // no node ever needs more colours than the width
    if !color_top(root, q.min(MAX_MODULAR_WIDTH), &mut colors)? {
        return Ok(None);
    }
    let col = Coloring::new(colors, q)?;
    debug_assert!(is_valid(g, &col), "modular-width witness invalid");
    Ok(Some(col))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exists_ssc, min_dominating_set, OracleBudget};
    use crate::param::modular::modular_decomposition;

    #[test]
    fn small_cases() {
        let w = solve_via_modular_width(&Graph::complete(6), 1).unwrap().unwrap();
        assert_eq!(w.num_colors_used(), 1);
        let p4 = Graph::path(4);
        let w = solve_via_modular_width(&p4, 1).unwrap().unwrap();
        assert!(is_valid(&p4, &w));
        assert!(solve_via_modular_width(&Graph::cycle(5), 1).unwrap().is_none());
        assert!(solve_via_modular_width(&Graph::cycle(5), 2).unwrap().is_some());
        assert!(matches!(
            solve_via_modular_width(&Graph::cycle(9), 2),
            Err(SscError::Resource(_))
        ));
    }

    #[test]
    fn dominating_sets_are_minimum() {
        let b = OracleBudget::default();
        for g in [Graph::path(7), Graph::cycle(6), Graph::empty(3), Graph::complete(4)] {
            let root = modular_decomposition(&g).root.unwrap();
            let Ok(d) = min_dom(&root) else { continue };
            assert_eq!(d.len(), min_dominating_set(&g, &b).unwrap().len(), "{g:?}");
        }
    }

    #[test]
    fn cycles_match_oracle() {
        let b = OracleBudget::default();
        for n in 3..=8 {
            let g = Graph::cycle(n);
            for q in 1..=3 {
                let want = exists_ssc(&g, q, &b).unwrap().is_some();
                let got = solve_via_modular_width(&g, q).unwrap();
                assert_eq!(got.is_some(), want, "C{n} q={q}");
            }
        }
    }
}
