use std::collections::HashMap;

use super::decomposition::TreeDecomposition;
use crate::error::{Result, SscError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    IntroduceVertex(usize),
    /// Edge `(u, v)` with `u < v`.
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted ascending.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored so that every child index is smaller than its parent's;
/// the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Checks every structural invariant against `g`, including that each
    /// edge is introduced exactly once and never below a Join whose bag holds
    /// both endpoints.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(SscError::Contract(m));
        if self.nodes.is_empty() || self.root != self.nodes.len() - 1 {
            return bad("root must be the last node".into());
        }
        if !self.nodes[self.root].bag.is_empty() {
            return bad("root bag must be empty".into());
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        let mut introduced: HashMap<(usize, usize), usize> = HashMap::new();
        let mut forgotten = vec![false; g.n()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("node {i}: bag not strictly sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return bad(format!("node {i}: child {c} not before parent"));
                }
                parent_count[c] += 1;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let arity = node.children.len();
            match node.kind {
                NodeKind::Leaf => {
                    if arity != 0 || !node.bag.is_empty() {
                        return bad(format!("node {i}: leaf must be empty and childless"));
                    }
                }
                NodeKind::IntroduceVertex(v) => {
                    if arity != 1 || child_bag(0).contains(&v) {
                        return bad(format!("node {i}: bad introduce of {v}"));
                    }
                    let mut expect = child_bag(0).clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if expect != node.bag {
                        return bad(format!("node {i}: introduce bag mismatch"));
                    }
                    if v >= g.n() {
                        return bad(format!("vertex {v} out of range"));
                    }
                }
                NodeKind::IntroduceEdge(u, v) => {
                    if arity != 1 || *child_bag(0) != node.bag {
                        return bad(format!("node {i}: bad introduce-edge"));
                    }
                    if u >= v || !g.has_edge(u, v) {
                        return bad(format!("node {i}: ({u},{v}) is not an edge"));
                    }
                    if !node.bag.contains(&u) || !node.bag.contains(&v) {
                        return bad(format!("node {i}: edge endpoints not in bag"));
                    }
                    if introduced.insert((u, v), i).is_some() {
                        return bad(format!("edge ({u},{v}) introduced twice"));
                    }
                }
                NodeKind::Forget(v) => {
                    if arity != 1 || !child_bag(0).contains(&v) {
                        return bad(format!("node {i}: bad forget of {v}"));
                    }
                    if std::mem::replace(&mut forgotten[v], true) {
                        return bad(format!("vertex {v} forgotten twice"));
                    }
                    let expect: Vec<usize> =
                        child_bag(0).iter().copied().filter(|&w| w != v).collect();
                    if expect != node.bag {
                        return bad(format!("node {i}: forget bag mismatch"));
                    }
                }
                NodeKind::Join => {
                    if arity != 2 || *child_bag(0) != node.bag || *child_bag(1) != node.bag {
                        return bad(format!("node {i}: join needs two equal-bag children"));
                    }
                }
            }
        }
        if parent_count[..self.root].iter().any(|&c| c != 1) || parent_count[self.root] != 0 {
            return bad("nodes do not form a single rooted tree".into());
        }
        if forgotten.iter().any(|s| !s) {
            return bad("some vertex is never forgotten".into());
        }
        if introduced.len() != g.m() {
            return bad(format!("{} of {} edges introduced", introduced.len(), g.m()));
        }
        // no edge between join-bag vertices may be introduced below the join
        let mut below: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let mut acc: Vec<(usize, usize)> = Vec::new();
            for &c in &node.children {
                acc.extend(std::mem::take(&mut below[c]));
            }
            if let NodeKind::IntroduceEdge(u, v) = node.kind {
                acc.push((u, v));
            }
            acc.retain(|(u, v)| node.bag.contains(u) && node.bag.contains(v));
            if node.kind == NodeKind::Join && !acc.is_empty() {
                return bad(format!("node {i}: edge {:?} introduced below a join", acc[0]));
            }
            below[i] = acc;
        }
        Ok(())
    }
}

fn chain(nodes: &mut Vec<NiceNode>, child: usize, kind: NodeKind) -> usize {
    let mut bag = nodes[child].bag.clone();
    match kind {
        NodeKind::IntroduceVertex(v) => {
            let pos = bag.partition_point(|&w| w < v);
            bag.insert(pos, v);
        }
        NodeKind::Forget(v) => bag.retain(|&w| w != v),
        _ => {}
    }
    nodes.push(NiceNode {
        kind,
        bag,
        children: vec![child],
    });
    nodes.len() - 1
}

/// Converts a decomposition into nice form rooted at bag 0, after merging
/// bags that are subsets of a neighbour. Each edge is
/// introduced once, directly above the highest Join whose bag holds both
/// endpoints, or directly above the node introducing its later endpoint
/// when no such Join exists.
pub fn nicify(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    td.validate(g)?;
    let td = &td.contracted();
    let adj = td.tree_adjacency();
    let nb = td.bags.len();

    // orient the tree from bag 0, children in increasing index order
    let mut parent = vec![usize::MAX; nb];
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        let mut kids: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == usize::MAX).collect();
        kids.sort_unstable();
        for y in kids {
            parent[y] = x;
            order.push(y);
        }
        i += 1;
    }
    let mut tree_children = vec![Vec::new(); nb];
    for &x in &order[1..] {
        tree_children[parent[x]].push(x);
    }
    for c in &mut tree_children {
        c.sort_unstable();
    }

    let mut bags: Vec<Vec<usize>> = td.bags.clone();
    for b in &mut bags {
        b.sort_unstable();
        b.dedup();
    }

    // raw nice tree without edges, built children-first
    let mut nodes: Vec<NiceNode> = Vec::new();
    let mut top = vec![usize::MAX; nb];
    for &x in order.iter().rev() {
        let target = &bags[x];
        let mut subs = Vec::new();
        for &c in &tree_children[x] {
            let mut cur = top[c];
            let cbag = nodes[cur].bag.clone();
            for &v in cbag.iter().filter(|v| !target.contains(v)) {
                cur = chain(&mut nodes, cur, NodeKind::Forget(v));
            }
            for &v in target.iter().filter(|v| !cbag.contains(v)) {
                cur = chain(&mut nodes, cur, NodeKind::IntroduceVertex(v));
            }
            subs.push(cur);
        }
        if subs.is_empty() {
            nodes.push(NiceNode {
                kind: NodeKind::Leaf,
                bag: Vec::new(),
                children: Vec::new(),
            });
            let mut cur = nodes.len() - 1;
            for &v in target {
                cur = chain(&mut nodes, cur, NodeKind::IntroduceVertex(v));
            }
            subs.push(cur);
        }
        let mut cur = subs[0];
        for &s in &subs[1..] {
            nodes.push(NiceNode {
                kind: NodeKind::Join,
                bag: target.clone(),
                children: vec![cur, s],
            });
            cur = nodes.len() - 1;
        }
        top[x] = cur;
    }
    let mut root = top[0];
    for v in bags[0].clone() {
        root = chain(&mut nodes, root, NodeKind::Forget(v));
    }

    // place edges
    let mut up = vec![usize::MAX; nodes.len()];
    for (i, node) in nodes.iter().enumerate() {
        for &c in &node.children {
            up[c] = i;
        }
    }
    let mut depth = vec![0usize; nodes.len()];
    for i in (0..nodes.len()).rev() {
        if up[i] != usize::MAX {
            depth[i] = depth[up[i]] + 1;
        }
    }
    // per edge: (deepest node, highest join)
    let mut place: HashMap<(usize, usize), (usize, Option<usize>)> = HashMap::new();
    for (i, node) in nodes.iter().enumerate() {
        for (a, &u) in node.bag.iter().enumerate() {
            for &v in &node.bag[a + 1..] {
                if !g.has_edge(u, v) {
                    continue;
                }
                let e = place.entry((u, v)).or_insert((i, None));
                if depth[i] > depth[e.0] {
                    e.0 = i;
                }
                if node.kind == NodeKind::Join && e.1.is_none_or(|j| depth[i] < depth[j]) {
                    e.1 = Some(i);
                }
            }
        }
    }
    let mut above: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (u, v) in g.edges() {
        let &(deep, join) = place.get(&(u, v)).expect("edge covered");
        above[join.unwrap_or(deep)].push((u, v));
    }

    // emit in post-order, threading edge chains above their anchors
    let mut out: Vec<NiceNode> = Vec::with_capacity(nodes.len() + g.m());
    let mut new_index = vec![usize::MAX; nodes.len()];
    let mut stack = vec![(root, false)];
    while let Some((x, done)) = stack.pop() {
        if !done {
            stack.push((x, true));
            for &c in nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
            continue;
        }
        let node = &nodes[x];
        out.push(NiceNode {
            kind: node.kind,
            bag: node.bag.clone(),
            children: node.children.iter().map(|&c| new_index[c]).collect(),
        });
        let mut cur = out.len() - 1;
        for &(u, v) in &above[x] {
            out.push(NiceNode {
                kind: NodeKind::IntroduceEdge(u, v),
                bag: node.bag.clone(),
                children: vec![cur],
            });
            cur = out.len() - 1;
        }
        new_index[x] = cur;
    }
    let ntd = NiceTreeDecomposition {
        root: out.len() - 1,
        nodes: out,
    };
    debug_assert!(ntd.validate(g).is_ok(), "{:?}", ntd.validate(g));
    Ok(ntd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::decomposition::{heuristic_tree_decomposition, Strategy};

    fn count(ntd: &NiceTreeDecomposition, f: impl Fn(&NodeKind) -> bool) -> usize {
        ntd.nodes.iter().filter(|n| f(&n.kind)).count()
    }

    #[test]
    fn single_bag_triangle() {
        let g = Graph::complete(3);
        let td = TreeDecomposition {
            bags: vec![vec![0, 1, 2]],
            edges: vec![],
        };
        let ntd = nicify(&td, &g).unwrap();
        ntd.validate(&g).unwrap();
        assert_eq!(count(&ntd, |k| matches!(k, NodeKind::IntroduceVertex(_))), 3);
        assert_eq!(count(&ntd, |k| matches!(k, NodeKind::IntroduceEdge(..))), 3);
        assert_eq!(count(&ntd, |k| matches!(k, NodeKind::Forget(_))), 3);
        assert_eq!(count(&ntd, |k| matches!(k, NodeKind::Join)), 0);
        assert_eq!(ntd.len(), 10);
    }

    #[test]
    fn empty_graph_is_single_leaf() {
        let g = Graph::empty(0);
        let td = TreeDecomposition {
            bags: vec![vec![]],
            edges: vec![],
        };
        let ntd = nicify(&td, &g).unwrap();
        assert_eq!(ntd.len(), 1);
        assert_eq!(ntd.nodes[0].kind, NodeKind::Leaf);
        assert_eq!(ntd.root, 0);
    }

    #[test]
    fn one_edge() {
        let g = Graph::path(2);
        let td = heuristic_tree_decomposition(&g, Strategy::MinFill);
        let ntd = nicify(&td, &g).unwrap();
        assert_eq!(count(&ntd, |k| matches!(k, NodeKind::IntroduceEdge(..))), 1);
    }

    #[test]
    fn joins_keep_edges_above() {
        // spider: centre 0 with legs 1-4, 2-5, 3-6; the root bag {0,1} has
        // three children, so two joins share the edge (0,1)
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 4], vec![2, 5], vec![3, 6]],
            edges: vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5)],
        };
        let ntd = nicify(&td, &g).unwrap();
        ntd.validate(&g).unwrap();
        assert_eq!(count(&ntd, |k| *k == NodeKind::Join), 2);
        let top_join = (0..ntd.len()).rev().find(|&i| ntd.nodes[i].kind == NodeKind::Join).unwrap();
        let above = ntd.nodes.iter().position(|n| n.children.contains(&top_join)).unwrap();
        assert_eq!(ntd.nodes[above].kind, NodeKind::IntroduceEdge(0, 1));
    }

    #[test]
    fn rejects_invalid_decomposition() {
        let g = Graph::path(3);
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
        };
        assert!(matches!(nicify(&td, &g), Err(SscError::Contract(_))));
    }
}
