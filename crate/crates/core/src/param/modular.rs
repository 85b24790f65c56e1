use crate::error::{Result, SscError};
use crate::graph::Graph;

/// Node of the modular decomposition tree. Children are ordered by their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdNode {
    Vertex(usize),
    Union(Vec<MdNode>),
    Join(Vec<MdNode>),
    /// `quotient` has one vertex per child, adjacency read off representatives.
    Prime { children: Vec<MdNode>, quotient: Graph },
}

impl MdNode {
    pub fn children(&self) -> &[MdNode] {
        match self {
            MdNode::Vertex(_) => &[],
            MdNode::Union(c) | MdNode::Join(c) => c,
            MdNode::Prime { children, .. } => children,
        }
    }

    /// Vertices below this node, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            MdNode::Vertex(v) => out.push(*v),
            _ => self.children().iter().for_each(|c| c.collect(out)),
        }
    }

    fn min_vertex(&self) -> usize {
        match self {
            MdNode::Vertex(v) => *v,
            _ => self.children()[0].min_vertex(),
        }
    }

    /// Union and Join count as width 2, Prime as its child count.
    pub fn width(&self) -> usize {
        let own = match self {
            MdNode::Vertex(_) => 1,
            MdNode::Union(_) | MdNode::Join(_) => 2,
            MdNode::Prime { children, .. } => children.len(),
        };
        self.children().iter().map(MdNode::width).fold(own, usize::max)
    }

    fn write_term(&self, out: &mut String) {
        let (name, children) = match self {
            MdNode::Vertex(v) => {
                out.push_str(&format!("leaf {v}"));
                return;
            }
            MdNode::Union(c) => ("union", c),
            MdNode::Join(c) => ("join", c),
            MdNode::Prime { children, .. } => ("prime", children),
        };
        out.push_str(name);
        out.push('(');
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            c.write_term(out);
        }
        out.push(')');
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTree {
    /// `None` for the empty graph.
    pub root: Option<MdNode>,
}

impl ModularTree {
    pub fn width(&self) -> usize {
        self.root.as_ref().map_or(0, MdNode::width)
    }

    /// Parenthesized term, e.g. `join(leaf 0, union(leaf 1, leaf 2))`.
    pub fn to_term(&self) -> String {
        let mut out = String::new();
        match &self.root {
            Some(r) => r.write_term(&mut out),
            None => out.push_str("empty"),
        }
        out
    }

    /// Leaves biject with V(g), every node's children are modules of its
    /// induced subgraph, and node kinds match the quotient.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let Some(root) = &self.root else {
            return if g.n() == 0 {
                Ok(())
            } else {
                Err(SscError::Contract("empty tree for a non-empty graph".into()))
            };
        };
        if root.vertices() != (0..g.n()).collect::<Vec<_>>() {
            return Err(SscError::Contract("leaves do not match the vertex set".into()));
        }
        check_node(g, root)
    }
}

fn check_node(g: &Graph, node: &MdNode) -> Result<()> {
    let children = node.children();
    if matches!(node, MdNode::Vertex(_)) {
        return Ok(());
    }
    if children.len() < 2 {
        return Err(SscError::Contract("internal node with fewer than two children".into()));
    }
    let sets: Vec<Vec<usize>> = children.iter().map(MdNode::vertices).collect();
    for s in &sets {
        if !is_module_within(g, s, &node.vertices()) {
            return Err(SscError::Contract(format!("{s:?} is not a module")));
        }
    }
    let reps: Vec<usize> = sets.iter().map(|s| s[0]).collect();
    let quotient = g.induced_subgraph(&reps);
    let p = reps.len();
    let ok = match node {
        MdNode::Union(_) => quotient.m() == 0,
        MdNode::Join(_) => quotient.m() == p * (p - 1) / 2,
        MdNode::Prime { quotient: qg, .. } => *qg == quotient,
        MdNode::Vertex(_) => unreachable!(),
    };
    if !ok {
        return Err(SscError::Contract("node kind does not match its quotient".into()));
    }
    children.iter().try_for_each(|c| check_node(g, c))
}

/// Every vertex of `within` outside `m` sees all of `m` or none of it.
pub fn is_module_within(g: &Graph, m: &[usize], within: &[usize]) -> bool {
    within.iter().filter(|v| !m.contains(v)).all(|&w| {
        let hits = m.iter().filter(|&&x| g.has_edge(w, x)).count();
        hits == 0 || hits == m.len()
    })
}

/// Smallest module of G[s] containing `seed`: keep absorbing splitters.
fn module_closure(g: &Graph, s: &[usize], seed: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; g.n()];
    for &v in seed {
        inside[v] = true;
    }
    loop {
        let splitter = s.iter().copied().find(|&w| {
            if inside[w] {
                return false;
            }
            let mut seen = [false; 2];
            for &x in s.iter().filter(|&&x| inside[x]) {
                seen[usize::from(g.has_edge(w, x))] = true;
            }
            seen[0] && seen[1]
        });
        match splitter {
            Some(w) => inside[w] = true,
            None => return inside,
        }
    }
}

fn build(g: &Graph, s: &[usize]) -> MdNode {
    if s.len() == 1 {
        return MdNode::Vertex(s[0]);
    }
    let sub = g.induced_subgraph(s);
    let lift = |parts: Vec<Vec<usize>>| -> Vec<MdNode> {
        let mut nodes: Vec<MdNode> = parts
            .into_iter()
            .map(|p| build(g, &p.into_iter().map(|i| s[i]).collect::<Vec<_>>()))
            .collect();
        nodes.sort_by_key(MdNode::min_vertex);
        nodes
    };
    let comps = sub.connected_components();
    if comps.len() > 1 {
        return MdNode::Union(lift(comps));
    }
    let cocomps = sub.complement().connected_components();
    if cocomps.len() > 1 {
        return MdNode::Join(lift(cocomps));
    }

    // both G[s] and its complement are connected: the maximal proper modules
    // partition s, and the one holding v is the union of all proper closures
    // of pairs {v, u}
    let mut part_of = vec![usize::MAX; g.n()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &v in s {
        if part_of[v] != usize::MAX {
            continue;
        }
        let mut members = vec![false; g.n()];
        members[v] = true;
        for &u in s.iter().filter(|&&u| u != v) {
            let cl = module_closure(g, s, &[v, u]);
            if s.iter().any(|&w| !cl[w]) {
                for &w in s {
                    members[w] |= cl[w];
                }
            }
        }
        let part: Vec<usize> = s.iter().copied().filter(|&w| members[w]).collect();
        for &w in &part {
            part_of[w] = parts.len();
        }
        parts.push(part);
    }
    let mut children: Vec<MdNode> = parts.iter().map(|p| build(g, p)).collect();
    children.sort_by_key(MdNode::min_vertex);
    let reps: Vec<usize> = children.iter().map(MdNode::min_vertex).collect();
    let quotient = g.induced_subgraph(&reps);
    MdNode::Prime { children, quotient }
}

/// Canonical modular decomposition by recursive refinement (cubic-ish; fine
/// for the sizes this crate targets).
pub fn modular_decomposition(g: &Graph) -> ModularTree {
    if g.n() == 0 {
        return ModularTree { root: None };
    }
    let all: Vec<usize> = (0..g.n()).collect();
    ModularTree {
        root: Some(build(g, &all)),
    }
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn err(&self, msg: impl Into<String>) -> SscError {
        SscError::parse(1, format!("at offset {}: {}", self.pos, msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn node(&mut self, g: &Graph) -> Result<MdNode> {
        let kw = self.word().to_string();
        if kw == "leaf" {
            let num = self.word().to_string();
            return num
                .parse()
                .map(MdNode::Vertex)
                .map_err(|_| self.err(format!("bad leaf index '{num}'")));
        }
        if !matches!(kw.as_str(), "union" | "join" | "prime") {
            return Err(self.err(format!("unknown node '{kw}'")));
        }
        if !self.eat('(') {
            return Err(self.err("expected '('"));
        }
        let mut children = vec![self.node(g)?];
        while self.eat(',') {
            children.push(self.node(g)?);
        }
        if !self.eat(')') {
            return Err(self.err("expected ')'"));
        }
        Ok(match kw.as_str() {
            "union" => MdNode::Union(children),
            "join" => MdNode::Join(children),
            _ => {
                let mut reps = Vec::with_capacity(children.len());
                for c in &children {
                    let v = c.min_vertex();
                    if v >= g.n() {
                        return Err(self.err(format!("leaf {v} out of range")));
                    }
                    reps.push(v);
                }
                let quotient = g.induced_subgraph(&reps);
                MdNode::Prime { children, quotient }
            }
        })
    }
}

/// Parses a term against `g` and validates it (modules, kinds, leaves).
pub fn parse_modular_term(text: &str, g: &Graph) -> Result<ModularTree> {
    let mut p = TermParser { src: text, pos: 0 };
    p.skip_ws();
    let tree = if text[p.pos..].trim() == "empty" {
        ModularTree { root: None }
    } else {
        let root = p.node(g)?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.err("trailing input"));
        }
        ModularTree { root: Some(root) }
    };
    tree.validate(g)?;
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        let t = modular_decomposition(&Graph::complete(4));
        assert_eq!(t.to_term(), "join(leaf 0, leaf 1, leaf 2, leaf 3)");
        assert_eq!(t.width(), 2);
        let t = modular_decomposition(&Graph::empty(3));
        assert_eq!(t.to_term(), "union(leaf 0, leaf 1, leaf 2)");
        let t = modular_decomposition(&Graph::path(4));
        assert!(matches!(&t.root, Some(MdNode::Prime { children, .. }) if children.len() == 4));
        assert_eq!(t.width(), 4);
        assert_eq!(modular_decomposition(&Graph::empty(0)).width(), 0);
        assert_eq!(modular_decomposition(&Graph::empty(1)).width(), 1);
    }

    #[test]
    fn terms_round_trip() {
        // 0 adjacent to both 1 and 2, which are not adjacent
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let t = modular_decomposition(&g);
        assert_eq!(t.to_term(), "join(leaf 0, union(leaf 1, leaf 2))");
        assert_eq!(parse_modular_term(&t.to_term(), &g).unwrap(), t);
        let p4 = Graph::path(4);
        let t = modular_decomposition(&p4);
        assert_eq!(parse_modular_term(&t.to_term(), &p4).unwrap(), t);
        assert!(parse_modular_term("join(leaf 0, leaf 1, leaf 2)", &g).is_err());
        assert!(parse_modular_term("join(leaf 0, union(leaf 1, leaf 2)", &g).is_err());
        assert!(parse_modular_term("bogus(leaf 0)", &g).is_err());
    }

    #[test]
    fn prime_with_module_children() {
        // P4 with vertex 1 blown up into an independent pair {1, 4}
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 2)]).unwrap();
        let t = modular_decomposition(&g);
        assert_eq!(t.to_term(), "prime(leaf 0, union(leaf 1, leaf 4), leaf 2, leaf 3)");
        t.validate(&g).unwrap();
    }
}
