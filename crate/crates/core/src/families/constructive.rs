use crate::coloring::Coloring;
use crate::error::{Result, SscError};
use crate::graph::Graph;

use super::{Cotree, FamilyInstance, FamilyMeta, FamilySpec};

/// The colouring realizing the known upper bound of the instance's family.
pub fn constructive_coloring(inst: &FamilyInstance) -> Result<Coloring> {
    let g = &inst.graph;
    let n = g.n();
    let mut colors = vec![0; n];
    match (&inst.spec, &inst.meta) {
        (FamilySpec::Path { .. }, FamilyMeta::Order(order)) => {
            // every third vertex from the second; when n ≡ 1 (mod 3) start
            // from the first instead so the last vertex is covered
            let start = usize::from(n % 3 != 1);
            for i in (start..n).step_by(3) {
                colors[order[i]] = 1;
            }
        }
        (FamilySpec::Cycle { .. }, FamilyMeta::Order(order)) => {
            let picked: Vec<usize> = (0..n).step_by(3).collect();
            for &i in &picked {
                colors[order[i]] = 1;
            }
            if !n.is_multiple_of(3) {
                colors[order[*picked.last().expect("n >= 3")]] = 2;
            }
        }
        (FamilySpec::Complete { .. }, _) => colors[0] = 1,
        (FamilySpec::CompleteBipartite { a, .. }, _) => {
            colors[0] = 1;
            if *a > 1 {
                colors[*a] = 2;
            }
        }
        (FamilySpec::Threshold { .. }, FamilyMeta::Creation(seq)) => {
            // the last dominating vertex sees everything created before it;
            // later vertices are isolated and colour themselves
            let last = seq.iter().rposition(|&d| d).unwrap_or(0);
            colors[last] = 1;
            colors[last + 1..].fill(1);
        }
        (FamilySpec::Tree { .. } | FamilySpec::TreeLb { .. }, FamilyMeta::Rooted(parent)) => {
            if matches!(inst.spec, FamilySpec::TreeLb { .. }) {
                return Err(unsupported(&inst.spec));
            }
            tree_levels(g, parent, &mut colors);
        }
        (FamilySpec::Caterpillar { .. }, FamilyMeta::Spine(spine)) => {
            for (i, &v) in spine.iter().enumerate() {
                colors[v] = (i + 1) % 3 + 1;
            }
        }
        (FamilySpec::Grid { .. }, &FamilyMeta::Grid { rows, cols }) => {
            colors = grid(rows, cols);
        }
        (FamilySpec::Cograph { .. }, FamilyMeta::Cotree(t)) => cotree(t, &mut colors),
        (FamilySpec::BipartitePermutation { .. }, FamilyMeta::StrongOrdering { a, b }) => {
            sweep(g, a, b, [1, 2], &mut colors);
            sweep(g, b, a, [3, 4], &mut colors);
        }
        (spec, _) => return Err(unsupported(spec)),
    }
    let q = colors.iter().copied().max().unwrap_or(0).max(1);
    Coloring::new(colors, q)
}

fn unsupported(spec: &FamilySpec) -> SscError {
    SscError::Unsupported(format!("no constructive colouring for {}", spec.name()))
}

/// Colour the even levels. A vertex on an odd level sees its parent and its
/// children, so the children of u avoid each other and u's parent; at most
/// Δ colours.
fn tree_levels(g: &Graph, parent: &[Option<usize>], colors: &mut [usize]) {
    let n = g.n();
    let mut children = vec![Vec::new(); n];
    let mut root = 0;
    for (v, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(v),
            None => root = v,
        }
    }
    colors[root] = 1;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        // v is on an even level and already coloured
        for &u in &children[v] {
            let mut c = 1;
            for &w in &children[u] {
                if c == colors[v] {
                    c += 1;
                }
                colors[w] = c;
                c += 1;
                stack.push(w);
            }
        }
    }
}

/// Perfect code {(r, c) : a·r + b·c + s ≡ 0 (mod 5)} of the infinite grid in
/// colour 1, then colour 2 on one vertex next to every boundary vertex the
/// code misses, chosen by a small search so no two 2s are within distance two.
fn grid(rows: usize, cols: usize) -> Vec<usize> {
    let id = |r: usize, c: usize| r * cols + c;
    let closed = |r: usize, c: usize| {
        let mut out = vec![(r, c)];
        if r > 0 {
            out.push((r - 1, c));
        }
        if c > 0 {
            out.push((r, c - 1));
        }
        if c + 1 < cols {
            out.push((r, c + 1));
        }
        if r + 1 < rows {
            out.push((r + 1, c));
        }
        out
    };
    let dist = |p: (usize, usize), q: (usize, usize)| p.0.abs_diff(q.0) + p.1.abs_diff(q.1);

    fn place(
        i: usize,
        missed: &[(usize, usize)],
        twos: &mut Vec<(usize, usize)>,
        options: &dyn Fn((usize, usize)) -> Vec<(usize, usize)>,
        dist: &dyn Fn((usize, usize), (usize, usize)) -> usize,
    ) -> bool {
        let Some(&u) = missed.get(i) else {
            return true;
        };
        if twos.iter().any(|&t| dist(u, t) <= 1) {
            return place(i + 1, missed, twos, options, dist);
        }
        for f in options(u) {
            if twos.iter().all(|&t| dist(f, t) > 2) {
                twos.push(f);
                if place(i + 1, missed, twos, options, dist) {
                    return true;
                }
                twos.pop();
            }
        }
        false
    }

    for (a, b) in [(1, 2), (2, 1)] {
        for s in 0..5 {
            let code = |r: usize, c: usize| (a * r + b * c + s).is_multiple_of(5);
            let missed: Vec<(usize, usize)> = (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| closed(r, c).iter().all(|&(x, y)| !code(x, y)))
                .collect();
            let options = |u: (usize, usize)| -> Vec<(usize, usize)> { closed(u.0, u.1) };
            let mut twos = Vec::new();
            if place(0, &missed, &mut twos, &options, &dist) {
                let mut colors = vec![0; rows * cols];
                for r in 0..rows {
                    for c in 0..cols {
                        if code(r, c) {
                            colors[id(r, c)] = 1;
                        }
                    }
                }
                for (r, c) in twos {
                    colors[id(r, c)] = 2;
                }
                return colors;
            }
        }
    }
    unreachable!("some code shift always repairs the boundary")
}

/// Union: colour each part on its own. Join: a leaf child is a universal
/// vertex and takes colour 1 alone; otherwise one vertex in each of two
/// children, colours 1 and 2.
fn cotree(t: &Cotree, colors: &mut [usize]) {
    match t {
        Cotree::Leaf(v) => colors[*v] = 1,
        Cotree::Union(children) => children.iter().for_each(|c| cotree(c, colors)),
        Cotree::Join(children) => {
            if let Some(Cotree::Leaf(v)) = children.iter().find(|c| matches!(c, Cotree::Leaf(_))) {
                colors[*v] = 1;
            } else {
                colors[children[0].first_leaf()] = 1;
                colors[children[1].first_leaf()] = 2;
            }
        }
    }
}

/// Dominate `targets` by colouring vertices of `side`: take the first
/// undominated target and colour the last side vertex adjacent to it,
/// alternating the two colours. The first step colours side[0].
fn sweep(g: &Graph, side: &[usize], targets: &[usize], pair: [usize; 2], colors: &mut [usize]) {
    let mut dominated = vec![false; g.n()];
    let mut step = 0;
    let mut pick = Some(side[0]);
    while let Some(v) = pick {
        colors[v] = pair[step % 2];
        step += 1;
        for &w in g.neighbors(v) {
            dominated[w] = true;
        }
        pick = targets
            .iter()
            .find(|&&t| !dominated[t])
            .map(|&t| *side.iter().rev().find(|&&a| g.has_edge(a, t)).expect("connected"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;
    use crate::families::generate;

    fn col(spec: FamilySpec) -> (Graph, Coloring) {
        let inst = generate(&spec).unwrap();
        let c = constructive_coloring(&inst).unwrap();
        (inst.graph, c)
    }

    #[test]
    fn recipe_examples() {
        let (_, c) = col(FamilySpec::Path { n: 6 });
        assert_eq!(c.colors(), &[0, 1, 0, 0, 1, 0]);
        let (g, c) = col(FamilySpec::Cycle { n: 7 });
        assert_eq!(c.colors(), &[1, 0, 0, 1, 0, 0, 2]);
        assert!(is_valid(&g, &c));
        let (_, c) = col(FamilySpec::Caterpillar { leaves: vec![1; 5] });
        assert_eq!(&c.colors()[..5], &[2, 3, 1, 2, 3]);
    }

    #[test]
    fn grids_up_to_twelve() {
        for rows in 1..=12 {
            for cols in 1..=12 {
                let (g, c) = col(FamilySpec::Grid { rows, cols });
                assert!(is_valid(&g, &c), "{rows}x{cols}");
                assert!(c.num_colors_used() <= 2);
            }
        }
    }

    #[test]
    fn oracle_only_families_are_unsupported() {
        for spec in [
            FamilySpec::Honeycomb { size: 1 },
            FamilySpec::SplitLb { n: 2 },
            FamilySpec::TreeLb { d: 2 },
        ] {
            let inst = generate(&spec).unwrap();
            assert!(matches!(constructive_coloring(&inst), Err(SscError::Unsupported(_))));
        }
    }
}
