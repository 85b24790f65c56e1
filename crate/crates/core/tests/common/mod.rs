#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssc_core::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices, by edge bitmask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Independent brute force: try every assignment in {0..q}^n and check the
/// definition directly. Only for tiny graphs.
pub fn brute_force_exists(g: &Graph, q: usize) -> bool {
    let n = g.n();
    let base = q + 1;
    let total = base.pow(n as u32);
    'outer: for mut code in 0..total {
        let mut col = vec![0; n];
        for c in col.iter_mut() {
            *c = code % base;
            code /= base;
        }
        for v in 0..n {
            let mut seen = vec![false; q + 1];
            let mut any = false;
            for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
                let c = col[w];
                if c != 0 {
                    if seen[c] {
                        continue 'outer;
                    }
                    seen[c] = true;
                    any = true;
                }
            }
            if !any {
                continue 'outer;
            }
        }
        return true;
    }
    false
}
