//! Generators for the graph classes with known bounds, their constructive
//! colourings, and hardness-reduction builders.

mod constructive;
mod reductions;

pub use constructive::constructive_coloring;
pub use reductions::{
    is_chordal, parse_x3c, vc_to_chordal, x3c_has_exact_cover, x3c_to_ssc, ChordalGadgets,
    X3cGadgets, X3cInstance,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SscError};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    /// `true` adds a dominating vertex, `false` an isolated one.
    Threshold { sequence: Vec<bool> },
    /// Random recursive tree on n vertices.
    Tree { n: usize, seed: u64 },
    /// Spine v_1..v_t, spine vertex i carrying `leaves[i]` pendants.
    Caterpillar { leaves: Vec<usize> },
    Grid { rows: usize, cols: usize },
    Honeycomb { size: usize },
    /// Random cotree on n leaves.
    Cograph { n: usize, seed: u64 },
    /// Connected bipartite permutation graph with |A| = n, built from
    /// monotone neighbourhood intervals.
    BipartitePermutation { n: usize, seed: u64 },
    /// Clique v_1..v_n plus v_{i,j} adjacent to v_i and v_j.
    SplitLb { n: usize },
    /// Complete d-ary tree of height 2.
    TreeLb { d: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    fn first_leaf(&self) -> usize {
        match self {
            Cotree::Leaf(v) => *v,
            Cotree::Union(c) | Cotree::Join(c) => c[0].first_leaf(),
        }
    }
}

/// Structure the constructive colourings need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyMeta {
    None,
    /// Vertex order along the path or cycle.
    Order(Vec<usize>),
    /// Creation sequence, vertex i created at step i.
    Creation(Vec<bool>),
    /// Parent of every vertex, root has `None`.
    Rooted(Vec<Option<usize>>),
    Spine(Vec<usize>),
    Grid { rows: usize, cols: usize },
    Cotree(Cotree),
    /// Strong ordering of the two sides.
    StrongOrdering { a: Vec<usize>, b: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub meta: FamilyMeta,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "bipartite",
            FamilySpec::Threshold { .. } => "threshold",
            FamilySpec::Tree { .. } => "tree",
            FamilySpec::Caterpillar { .. } => "caterpillar",
            FamilySpec::Grid { .. } => "grid",
            FamilySpec::Honeycomb { .. } => "honeycomb",
            FamilySpec::Cograph { .. } => "cograph",
            FamilySpec::BipartitePermutation { .. } => "bipperm",
            FamilySpec::SplitLb { .. } => "splitlb",
            FamilySpec::TreeLb { .. } => "treelb",
        }
    }

    /// Colour bound the constructive colouring must respect, if any.
    pub fn color_bound(&self) -> Option<usize> {
        Some(match self {
            FamilySpec::Path { .. } | FamilySpec::Complete { .. } | FamilySpec::Threshold { .. } => 1,
            FamilySpec::Cycle { n } => {
                if n % 3 == 0 {
                    1
                } else {
                    2
                }
            }
            FamilySpec::CompleteBipartite { .. } | FamilySpec::Grid { .. } | FamilySpec::Cograph { .. } => 2,
            FamilySpec::Caterpillar { .. } => 3,
            FamilySpec::BipartitePermutation { .. } => 4,
            FamilySpec::Tree { .. } => return None, // max degree, checked on the graph
            FamilySpec::Honeycomb { .. } | FamilySpec::SplitLb { .. } | FamilySpec::TreeLb { .. } => {
                return None
            }
        })
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(SscError::Contract(format!("{}: {msg}", self.name())));
        match self {
            FamilySpec::Path { n } | FamilySpec::Complete { n } if *n == 0 => bad("n must be positive"),
            FamilySpec::Cycle { n } if *n < 3 => bad("cycles need n >= 3"),
            FamilySpec::CompleteBipartite { a, b } if *a == 0 || *b == 0 => bad("both sides non-empty"),
            FamilySpec::Threshold { sequence } if sequence.is_empty() => bad("empty creation sequence"),
            FamilySpec::Tree { n, .. } | FamilySpec::Cograph { n, .. } if *n == 0 => bad("n must be positive"),
            FamilySpec::Caterpillar { leaves } if leaves.is_empty() => bad("empty spine"),
            FamilySpec::Grid { rows, cols } if *rows == 0 || *cols == 0 => bad("empty grid"),
            FamilySpec::Honeycomb { size } if *size == 0 => bad("size must be positive"),
            FamilySpec::BipartitePermutation { n, .. } if *n == 0 => bad("n must be positive"),
            FamilySpec::SplitLb { n } if *n == 0 => bad("n must be positive"),
            FamilySpec::TreeLb { d } if *d == 0 => bad("d must be positive"),
            _ => Ok(()),
        }
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits valid edges")
}

pub fn generate(spec: &FamilySpec) -> Result<FamilyInstance> {
    spec.check()?;
    let (graph, meta) = match spec {
        FamilySpec::Path { n } => (Graph::path(*n), FamilyMeta::Order((0..*n).collect())),
        FamilySpec::Cycle { n } => (Graph::cycle(*n), FamilyMeta::Order((0..*n).collect())),
        FamilySpec::Complete { n } => (Graph::complete(*n), FamilyMeta::None),
        FamilySpec::CompleteBipartite { a, b } => {
            let edges: Vec<_> = (0..*a).flat_map(|u| (*a..a + b).map(move |v| (u, v))).collect();
            (build(a + b, &edges), FamilyMeta::None)
        }
        FamilySpec::Threshold { sequence } => {
            let mut edges = Vec::new();
            for (v, &dom) in sequence.iter().enumerate() {
                if dom {
                    edges.extend((0..v).map(|u| (u, v)));
                }
            }
            (build(sequence.len(), &edges), FamilyMeta::Creation(sequence.clone()))
        }
        FamilySpec::Tree { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let parent: Vec<Option<usize>> = (0..*n)
                .map(|v| (v > 0).then(|| rng.gen_range(0..v)))
                .collect();
            let edges: Vec<_> = parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v))).collect();
            (build(*n, &edges), FamilyMeta::Rooted(parent))
        }
        FamilySpec::Caterpillar { leaves } => {
            let t = leaves.len();
            let mut edges: Vec<_> = (1..t).map(|i| (i - 1, i)).collect();
            let mut next = t;
            for (i, &r) in leaves.iter().enumerate() {
                for _ in 0..r {
                    edges.push((i, next));
                    next += 1;
                }
            }
            (build(next, &edges), FamilyMeta::Spine((0..t).collect()))
        }
        FamilySpec::Grid { rows, cols } => {
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..*rows {
                for c in 0..*cols {
                    if c + 1 < *cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < *rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            (build(rows * cols, &edges), FamilyMeta::Grid { rows: *rows, cols: *cols })
        }
        FamilySpec::Honeycomb { size } => (honeycomb(*size), FamilyMeta::None),
        FamilySpec::Cograph { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let leaves: Vec<usize> = (0..*n).collect();
            let join = rng.gen_bool(0.5);
            let tree = random_cotree(&mut rng, &leaves, join);
            let mut edges = Vec::new();
            cotree_edges(&tree, &mut edges);
            (build(*n, &edges), FamilyMeta::Cotree(tree))
        }
        FamilySpec::BipartitePermutation { n, seed } => bipartite_permutation(*n, *seed),
        FamilySpec::SplitLb { n } => {
            let n = *n;
            let mut edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for i in 0..n {
                for j in 0..n {
                    let b = n + i * n + j;
                    edges.push((i, b));
                    if j != i {
                        edges.push((j, b));
                    }
                }
            }
            (build(n + n * n, &edges), FamilyMeta::None)
        }
        FamilySpec::TreeLb { d } => {
            let d = *d;
            let mut parent = vec![None];
            parent.extend(std::iter::repeat_n(Some(0), d));
            for c in 1..=d {
                for _ in 0..d {
                    parent.push(Some(c));
                }
            }
            let edges: Vec<_> = parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v))).collect();
            (build(parent.len(), &edges), FamilyMeta::Rooted(parent))
        }
    };
    Ok(FamilyInstance {
        spec: spec.clone(),
        graph,
        meta,
    })
}

/// Hexagons at hex distance < size from the centre. Corners live on the
/// triangular lattice scaled by three, so shared corners coincide exactly.
fn honeycomb(size: usize) -> Graph {
    const OFFSETS: [(i64, i64); 6] = [(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)];
    let k = size as i64;
    let mut ids = std::collections::BTreeMap::new();
    let mut edges = Vec::new();
    for a in -k + 1..k {
        for b in -k + 1..k {
            if a.abs().max(b.abs()).max((a + b).abs()) >= k {
                continue;
            }
            let corners: Vec<usize> = OFFSETS
                .iter()
                .map(|&(x, y)| {
                    let key = (3 * a + x, 3 * b + y);
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect();
            for i in 0..6 {
                edges.push((corners[i], corners[(i + 1) % 6]));
            }
        }
    }
    // relabel by lattice position so the numbering is independent of the
    // hexagon visiting order
    let order: Vec<usize> = ids.values().copied().collect();
    let mut rank = vec![0; order.len()];
    for (pos, &id) in order.iter().enumerate() {
        rank[id] = pos;
    }
    let edges: Vec<_> = edges.into_iter().map(|(u, v)| (rank[u], rank[v])).collect();
    build(ids.len(), &edges)
}

fn random_cotree(rng: &mut ChaCha8Rng, leaves: &[usize], join: bool) -> Cotree {
    if leaves.len() == 1 {
        return Cotree::Leaf(leaves[0]);
    }
    let parts = rng.gen_range(2..=leaves.len().min(3));
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < parts - 1 {
        let c = rng.gen_range(1..leaves.len());
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut children = Vec::new();
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(leaves.len())) {
        children.push(random_cotree(rng, &leaves[start..end], !join));
        start = end;
    }
    if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    }
}

fn cotree_edges(t: &Cotree, edges: &mut Vec<(usize, usize)>) -> Vec<usize> {
    match t {
        Cotree::Leaf(v) => vec![*v],
        Cotree::Union(c) => c.iter().flat_map(|x| cotree_edges(x, edges)).collect(),
        Cotree::Join(c) => {
            let mut all: Vec<usize> = Vec::new();
            for x in c {
                let part = cotree_edges(x, edges);
                for &u in &all {
                    for &v in &part {
                        edges.push((u, v));
                    }
                }
                all.extend(part);
            }
            all
        }
    }
}

/// a_i sees the interval [s_i, l_i] of B with both ends non-decreasing and
/// consecutive intervals overlapping, which gives a connected graph whose
/// orderings are strong.
fn bipartite_permutation(n: usize, seed: u64) -> (Graph, FamilyMeta) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intervals: Vec<(usize, usize)> = Vec::with_capacity(n);
    let (mut s, mut l) = (0usize, 0usize);
    for i in 0..n {
        if i > 0 {
            s = rng.gen_range(s..=l);
            l = l.max(s);
        }
        l += rng.gen_range(0..=2);
        intervals.push((s, l));
    }
    let nb = l + 1;
    let mut edges = Vec::new();
    for (i, &(s, l)) in intervals.iter().enumerate() {
        for j in s..=l {
            edges.push((i, n + j));
        }
    }
    (
        build(n + nb, &edges),
        FamilyMeta::StrongOrdering {
            a: (0..n).collect(),
            b: (n..n + nb).collect(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap().graph
    }

    #[test]
    fn sizes() {
        let p = gen(FamilySpec::Path { n: 6 });
        assert_eq!((p.n(), p.m()), (6, 5));
        let s = gen(FamilySpec::SplitLb { n: 3 });
        assert_eq!(s.n(), 12);
        assert_eq!(s.m(), 3 + 3 + 6 * 2);
        let t = gen(FamilySpec::TreeLb { d: 3 });
        assert_eq!((t.n(), t.m()), (13, 12));
        let h1 = gen(FamilySpec::Honeycomb { size: 1 });
        assert!(h1.is_connected() && (0..6).all(|v| h1.degree(v) == 2) && h1.n() == 6);
        let h2 = gen(FamilySpec::Honeycomb { size: 2 });
        assert_eq!((h2.n(), h2.m()), (24, 30));
        assert_eq!(gen(FamilySpec::Honeycomb { size: 3 }).n(), 54);
        let g = gen(FamilySpec::Grid { rows: 3, cols: 4 });
        assert_eq!((g.n(), g.m()), (12, 17));
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
    }

    #[test]
    fn random_families_are_well_formed() {
        for seed in 0..20 {
            let t = gen(FamilySpec::Tree { n: 15, seed });
            assert!(t.is_connected() && t.m() == 14);
            let b = generate(&FamilySpec::BipartitePermutation { n: 6, seed }).unwrap();
            assert!(b.graph.is_connected());
            let FamilyMeta::StrongOrdering { a, b: bs } = &b.meta else { panic!() };
            // strong ordering: (a, b'), (a', b) with a < a', b < b' force (a, b), (a', b')
            for (i, &x) in a.iter().enumerate() {
                for &x2 in &a[i + 1..] {
                    for (j, &y) in bs.iter().enumerate() {
                        for &y2 in &bs[j + 1..] {
                            let g = &b.graph;
                            if g.has_edge(x, y2) && g.has_edge(x2, y) {
                                assert!(g.has_edge(x, y) && g.has_edge(x2, y2));
                            }
                        }
                    }
                }
            }
            let c = gen(FamilySpec::Cograph { n: 9, seed });
            assert_eq!(c.n(), 9);
        }
    }
}
