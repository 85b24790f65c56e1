use crate::coloring::Coloring;
use crate::graph::Graph;

/// Smallest-last order: repeatedly remove a minimum-degree vertex, then
/// reverse.
fn smallest_last(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !gone[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices left");
        gone[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Greedy proper colouring of G² in smallest-last order. Every vertex is
/// coloured, so domination is automatic, and a proper colouring of G² never
/// repeats a colour inside a closed neighbourhood. At most Δ² + 1 colours.
pub fn square_coloring_upper_bound(g: &Graph) -> Coloring {
    let sq = g.square();
    let mut colors = vec![0usize; g.n()];
    for v in smallest_last(&sq) {
        let mut taken = vec![false; sq.degree(v) + 2];
        for &w in sq.neighbors(v) {
            if colors[w] < taken.len() {
                taken[colors[w]] = true;
            }
        }
        colors[v] = (1..).find(|&c| !taken[c]).expect("free colour");
    }
    Coloring::from_colors(colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;

    #[test]
    fn examples() {
        let k5 = Graph::complete(5);
        let c = square_coloring_upper_bound(&k5);
        assert_eq!(c.num_colors_used(), 5);
        assert!(is_valid(&k5, &c));
        for g in [Graph::path(6), Graph::cycle(6)] {
            let c = square_coloring_upper_bound(&g);
            assert!(c.num_colors_used() <= 3);
            assert!(is_valid(&g, &c));
        }
        assert!(square_coloring_upper_bound(&Graph::empty(0)).is_empty());
    }
}
