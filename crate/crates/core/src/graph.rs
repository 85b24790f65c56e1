use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::bitset::Bitset;
use crate::error::{Result, SscError};

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbourhoods are kept both as sorted lists and as bitsets; the graph is
/// immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    bits: Vec<Bitset>,
    m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            bits: vec![Bitset::new(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicates and both orientations
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(SscError::Contract(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(SscError::Contract(format!("self-loop at {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_set(n, set))
    }

    fn from_sorted_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in set {
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.bits[u].insert(v);
            g.bits[v].insert(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_bits(&self, v: usize) -> &Bitset {
        &self.bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.bits[u].contains(v)
    }

    /// N[v] as a sorted list.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.partition_point(|&w| w < v);
        out.insert(pos, v);
        out
    }

    pub fn closed_neighbor_bits(&self, v: usize) -> Bitset {
        let mut b = self.bits[v].clone();
        b.insert(v);
        b
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Shortest-path distances from `s`; `usize::MAX` marks unreachable.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn square(&self) -> Graph {
        let mut set = BTreeSet::new();
        for u in 0..self.n() {
            for &w in &self.adj[u] {
                if w > u {
                    set.insert((u, w));
                }
                for &x in &self.adj[w] {
                    if x > u {
                        set.insert((u, x));
                    }
                }
            }
        }
        Self::from_sorted_set(self.n(), set)
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.bfs(s) {
                if d == usize::MAX {
                    return Diameter::Infinite;
                }
                best = best.max(d);
            }
        }
        Diameter::Finite(best)
    }

    /// Components ordered by smallest vertex, each sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut set = BTreeSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    set.insert((i, j));
                }
            }
        }
        Self::from_sorted_set(vertices.len(), set)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut set = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    set.insert((u, v));
                }
            }
        }
        Self::from_sorted_set(n, set)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
            .collect();
        Graph::from_edges(off + other.n(), &edges).expect("valid")
    }

    /// Canonical text form: header, then edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p {} {}", self.n(), self.m).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "e {u} {v}").unwrap();
        }
        s
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| SscError::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| SscError::parse(line, format!("bad {what} '{tok}'")))
}

/// Content lines of a text document: `(1-based line number, tokens)`,
/// skipping blanks and `#` comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

pub(crate) fn expect_end(toks: &[&str], used: usize, line: usize) -> Result<()> {
    if toks.len() > used {
        Err(SscError::parse(line, format!("unexpected token '{}'", toks[used])))
    } else {
        Ok(())
    }
}

/// Parses the `p <n> <m>` / `e <u> <v>` edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| SscError::parse(1, "missing 'p <n> <m>' header"))?;
    if header.first() != Some(&"p") {
        return Err(SscError::parse(hl, "expected 'p <n> <m>' header"));
    }
    let n = parse_usize(header.get(1).copied(), hl, "vertex count")?;
    let m = parse_usize(header.get(2).copied(), hl, "edge count")?;
    expect_end(&header, 3, hl)?;

    let mut set = BTreeSet::new();
    let mut count = 0;
    let mut last_line = hl;
    for (ln, toks) in lines {
        last_line = ln;
        if toks[0] != "e" {
            return Err(SscError::parse(ln, format!("unknown record '{}'", toks[0])));
        }
        let u = parse_usize(toks.get(1).copied(), ln, "endpoint")?;
        let v = parse_usize(toks.get(2).copied(), ln, "endpoint")?;
        expect_end(&toks, 3, ln)?;
        if u >= n || v >= n {
            return Err(SscError::parse(ln, format!("vertex index out of range (n={n})")));
        }
        if u == v {
            return Err(SscError::parse(ln, format!("self-loop at vertex {u}")));
        }
        set.insert((u.min(v), u.max(v)));
        count += 1;
    }
    if count != m {
        return Err(SscError::parse(
            last_line,
            format!("header declares {m} edge lines, found {count}"),
        ));
    }
    Ok(Graph::from_sorted_set(n, set))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_graph("p 3 2\ne 0 1\ne 1 2").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = parse_graph("p 1 0").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let g = parse_graph("p 3 2\ne 0 1\ne 1 0").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = parse_graph("p 3 1\n# c\ne 0 3").unwrap_err();
        assert!(matches!(err, SscError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_graph("p 3 1\ne 1 1").unwrap_err();
        assert!(matches!(err, SscError::Parse { line: 2, .. }));
        assert!(parse_graph("q 3 1").is_err());
        assert!(parse_graph("p 3 2\ne 0 1").is_err());
        assert!(parse_graph("p 3 1\ne 0 x").is_err());
    }

    #[test]
    fn closed_neighborhoods() {
        assert_eq!(Graph::path(3).closed_neighborhood(1), vec![0, 1, 2]);
        assert_eq!(Graph::empty(3).closed_neighborhood(2), vec![2]);
        assert_eq!(Graph::complete(4).closed_neighborhood(3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn square_examples() {
        let sq = Graph::path(4).square();
        let edges: Vec<_> = sq.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(Graph::cycle(5).square(), Graph::complete(5));
        assert_eq!(Graph::complete(6).square(), Graph::complete(6));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(Graph::complete(5).diameter(), Diameter::Finite(1));
        assert_eq!(Graph::path(4).diameter(), Diameter::Finite(3));
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.diameter(), Diameter::Infinite);
        assert_eq!(Graph::empty(1).diameter(), Diameter::Finite(0));
        assert_eq!(Graph::empty(0).diameter(), Diameter::Finite(0));
    }

    #[test]
    fn components() {
        let g = Graph::path(3).disjoint_union(&Graph::path(2));
        let c = g.connected_components();
        assert_eq!(c, vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(Graph::empty(4).connected_components().len(), 4);
        assert_eq!(Graph::cycle(5).connected_components().len(), 1);
    }

    #[test]
    fn roundtrip_text() {
        let g = Graph::cycle(6);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }
}
