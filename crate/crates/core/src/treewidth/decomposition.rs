use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Result, SscError};
use crate::graph::{content_lines, Graph};

/// Tree decomposition with an unrooted edge list; consumers root it at bag 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    MinFill,
    MinDegree,
}

impl TreeDecomposition {
    /// Merges every bag that is a subset of a tree neighbour into that
    /// neighbour. The result is still valid and has the same width; bag 0
    /// stays the bag that absorbed the old bag 0.
    pub fn contracted(&self) -> TreeDecomposition {
        let nb = self.bags.len();
        let mut bags: Vec<BTreeSet<usize>> =
            self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nb];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; nb];
        let mut root = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..nb {
                if !alive[a] {
                    continue;
                }
                let target = adj[a].iter().copied().find(|&b| bags[a].is_subset(&bags[b]));
                let Some(b) = target else { continue };
                for c in std::mem::take(&mut adj[a]) {
                    adj[c].remove(&a);
                    if c != b {
                        adj[c].insert(b);
                        adj[b].insert(c);
                    }
                }
                alive[a] = false;
                bags[a].clear();
                if root == a {
                    root = b;
                }
                changed = true;
            }
        }
        // root first, then the rest in index order
        let mut order: Vec<usize> = vec![root];
        order.extend((0..nb).filter(|&i| alive[i] && i != root));
        let mut index = vec![usize::MAX; nb];
        for (i, &x) in order.iter().enumerate() {
            index[x] = i;
        }
        let mut edges = Vec::new();
        for &x in &order {
            for &y in &adj[x] {
                if x < y {
                    edges.push((index[x].min(index[y]), index[x].max(index[y])));
                }
            }
        }
        edges.sort_unstable();
        TreeDecomposition {
            bags: order.iter().map(|&x| bags[x].iter().copied().collect()).collect(),
            edges,
        }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Adjacency lists of the decomposition tree.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks vertex coverage, edge coverage, tree shape and the connected
    /// occurrence of every vertex.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let nb = self.bags.len();
        let bad = |m: String| Err(SscError::Contract(m));
        if nb == 0 {
            return bad("decomposition has no bags".into());
        }
        if self.edges.len() != nb - 1 {
            return bad(format!("{} bags need {} tree edges", nb, nb - 1));
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
                return bad(format!("bag vertex {v} out of range"));
            }
        }
        for &(a, b) in &self.edges {
            if a >= nb || b >= nb || a == b {
                return bad(format!("bad tree edge ({a},{b})"));
            }
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; nb];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("decomposition tree is disconnected".into());
        }

        let sets: Vec<BTreeSet<usize>> =
            self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        for v in 0..g.n() {
            let holders: Vec<usize> = (0..nb).filter(|&i| sets[i].contains(&v)).collect();
            let Some(&start) = holders.first() else {
                return bad(format!("vertex {v} in no bag"));
            };
            // holders must induce a connected subtree
            let mut reach = vec![false; nb];
            reach[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !reach[y] && sets[y].contains(&v) {
                        reach[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            if count != holders.len() {
                return bad(format!("bags containing {v} are not connected"));
            }
        }
        for (u, v) in g.edges() {
            if !sets.iter().any(|s| s.contains(&u) && s.contains(&v)) {
                return bad(format!("edge ({u},{v}) not covered"));
            }
        }
        Ok(())
    }

    /// PACE-style text: `s td <bags> <width+1> <n>`, `b <id> <v..>`, tree
    /// edges `<a> <b>`; bag ids and vertices are 1-based in the file.
    pub fn to_text(&self, n: usize) -> String {
        let mut s = String::new();
        writeln!(s, "s td {} {} {}", self.bags.len(), self.width() + 1, n).unwrap();
        for (i, bag) in self.bags.iter().enumerate() {
            write!(s, "b {}", i + 1).unwrap();
            for v in bag {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        s
    }
}

pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut lines = content_lines(text).filter(|(_, t)| t[0] != "c");
    let (hl, h) = lines
        .next()
        .ok_or_else(|| SscError::parse(1, "missing 's td' header"))?;
    if h.len() != 5 || h[0] != "s" || h[1] != "td" {
        return Err(SscError::parse(hl, "expected 's td <bags> <width+1> <n>'"));
    }
    let num = |t: &str, ln: usize| -> Result<usize> {
        t.parse()
            .map_err(|_| SscError::parse(ln, format!("bad integer '{t}'")))
    };
    let nb = num(h[2], hl)?;
    let n = num(h[4], hl)?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nb];
    let mut edges = Vec::new();
    for (ln, t) in lines {
        if t[0] == "b" {
            let id = num(t.get(1).copied().unwrap_or(""), ln)?;
            if id == 0 || id > nb {
                return Err(SscError::parse(ln, format!("bag id {id} out of range")));
            }
            let mut bag = Vec::new();
            for tok in &t[2..] {
                let v = num(tok, ln)?;
                if v == 0 || v > n {
                    return Err(SscError::parse(ln, format!("vertex {v} out of range")));
                }
                bag.push(v - 1);
            }
            bag.sort_unstable();
            bag.dedup();
            bags[id - 1] = Some(bag);
        } else {
            if t.len() != 2 {
                return Err(SscError::parse(ln, "expected tree edge '<a> <b>'"));
            }
            let (a, b) = (num(t[0], ln)?, num(t[1], ln)?);
            if a == 0 || b == 0 || a > nb || b > nb {
                return Err(SscError::parse(ln, "tree edge endpoint out of range"));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| SscError::parse(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    Ok(TreeDecomposition { bags, edges })
}

/// Elimination-ordering heuristic. Each eliminated vertex contributes the
/// bag {v} ∪ N(v) in the current fill graph; its parent is the bag of the
/// neighbour eliminated next. Ties go to the lowest vertex index.
pub fn heuristic_tree_decomposition(g: &Graph, strategy: Strategy) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut position = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    let mut nbrs_at_elim = Vec::with_capacity(n);

    for step in 0..n {
        let cost = |v: usize| -> usize {
            match strategy {
                Strategy::MinDegree => adj[v].len(),
                Strategy::MinFill => {
                    let ns: Vec<usize> = adj[v].iter().copied().collect();
                    let mut fill = 0;
                    for (i, &a) in ns.iter().enumerate() {
                        for &b in &ns[i + 1..] {
                            if !adj[a].contains(&b) {
                                fill += 1;
                            }
                        }
                    }
                    fill
                }
            }
        };
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (cost(v), adj[v].len(), v))
            .expect("vertices remain");
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &ns {
            adj[a].remove(&v);
        }
        alive[v] = false;
        position[v] = step;
        let mut bag = ns.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        nbrs_at_elim.push(ns);
    }

    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, ns) in nbrs_at_elim.iter().enumerate() {
        match ns.iter().map(|&w| position[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    // different components: chain their roots together
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    // renumber so the last elimination step (a natural root) is bag 0
    let last = n - 1;
    bags.reverse();
    let edges = edges.into_iter().map(|(a, b)| (last - a, last - b)).collect();
    let td = TreeDecomposition { bags, edges };
    debug_assert!(td.validate(g).is_ok());
    td
}
