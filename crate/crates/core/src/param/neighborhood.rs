use crate::coloring::Coloring;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Clique,
    Independent,
}

/// Partition into neighbourhood types: u and v share a class iff
/// N(u) \ {v} = N(v) \ {u}. Singleton classes are reported as cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    /// Each class sorted; classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub kinds: Vec<ClassKind>,
    /// Quotient adjacency between classes (no self-loops).
    pub quotient: Graph,
    class_of: Vec<usize>,
}

impl TypePartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }
}

pub fn same_type(g: &Graph, u: usize, v: usize) -> bool {
    let mut a = g.neighbor_bits(u).clone();
    let mut b = g.neighbor_bits(v).clone();
    a.remove(v);
    b.remove(u);
    a == b
}

pub fn type_partition(g: &Graph) -> TypePartition {
    let n = g.n();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        // the relation is an equivalence, so comparing with one member is enough
        match classes.iter().position(|c| same_type(g, c[0], v)) {
            Some(i) => {
                classes[i].push(v);
                class_of[v] = i;
            }
            None => {
                class_of[v] = classes.len();
                classes.push(vec![v]);
            }
        }
    }
    let kinds = classes
        .iter()
        .map(|c| {
            if c.len() < 2 || g.has_edge(c[0], c[1]) {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            }
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if g.has_edge(classes[i][0], classes[j][0]) {
                edges.push((i, j));
            }
        }
    }
    let quotient = Graph::from_edges(classes.len(), &edges).expect("valid quotient");
    TypePartition {
        classes,
        kinds,
        quotient,
        class_of,
    }
}

/// One vertex per class with distinct colours; classes of isolated vertices
/// colour every member. Uses at most t colours.
pub fn type_coloring(g: &Graph, tp: &TypePartition) -> Coloring {
    let mut colors = vec![0; g.n()];
    for (i, class) in tp.classes.iter().enumerate() {
        if g.degree(class[0]) == 0 {
            for &v in class {
                colors[v] = i + 1;
            }
        } else {
            colors[class[0]] = i + 1;
        }
    }
    Coloring::from_colors(colors)
}

/// Kernel for palette size q: keep the q+1 smallest members of every class.
/// `mapping[v]` is v's index in the kernel, or `None` if deleted.
pub fn nd_kernelize(g: &Graph, q: usize) -> (Graph, Vec<Option<usize>>) {
    let tp = type_partition(g);
    let mut keep: Vec<usize> = tp
        .classes
        .iter()
        .flat_map(|c| c.iter().copied().take(q + 1))
        .collect();
    keep.sort_unstable();
    let mut mapping = vec![None; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        mapping[v] = Some(i);
    }
    (g.induced_subgraph(&keep), mapping)
}

/// Lifts a kernel witness. Deleted vertices stay uncoloured (a retained
/// uncoloured class-mate with the same neighbourhood always exists), except
/// isolated vertices, which must colour themselves.
pub fn lift_nd_kernel(g: &Graph, kernel_col: &Coloring, mapping: &[Option<usize>]) -> Coloring {
    let colors = (0..g.n())
        .map(|v| match mapping[v] {
            Some(i) => kernel_col.color(i),
            None if g.degree(v) == 0 => 1,
            None => 0,
        })
        .collect();
    Coloring::new(colors, kernel_col.palette().max(1)).expect("palette respected")
}

/// Decision via neighbourhood diversity: constructive when q ≥ t, otherwise
/// solve the kernel exactly and lift.
pub fn solve_via_neighborhood_diversity(
    g: &Graph,
    q: usize,
) -> crate::error::Result<Option<Coloring>> {
    if g.n() == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    let tp = type_partition(g);
    if q >= tp.len() {
        return Ok(Some(type_coloring(g, &tp).with_palette(q)?));
    }
    let (kernel, mapping) = nd_kernelize(g, q);
    match crate::solve::exact_decide(&kernel, q)? {
        Some(kc) => Ok(Some(lift_nd_kernel(g, &kc, &mapping).with_palette(q)?)),
        None => Ok(None),
    }
}
