mod common;

use common::{all_graphs, brute_force_exists, gnp, rng};
use ssc_core::{chi_ssc, exists_ssc, is_valid, min_dominating_set, Graph, OracleBudget, SscError};

#[test]
fn agrees_with_brute_force_on_all_small_graphs() {
    let b = OracleBudget::default();
    for n in 1..=5 {
        for g in all_graphs(n) {
            for q in 1..=3 {
                let got = exists_ssc(&g, q, &b).unwrap();
                assert_eq!(got.is_some(), brute_force_exists(&g, q), "{g:?} q={q}");
                if let Some(w) = got {
                    assert!(is_valid(&g, &w));
                }
            }
        }
    }
}

#[test]
fn agrees_with_brute_force_on_random_graphs() {
    let b = OracleBudget::default();
    let mut r = rng(11);
    for i in 0..60 {
        let g = gnp(&mut r, 6 + i % 3, [0.25, 0.45][i % 2]);
        for q in 1..=2 {
            assert_eq!(exists_ssc(&g, q, &b).unwrap().is_some(), brute_force_exists(&g, q));
        }
    }
}

fn brute_domination_number(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || g.neighbors(v).iter().any(|&w| s >> w & 1 == 1)))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

#[test]
fn chi_and_domination() {
    let b = OracleBudget::default();
    assert_eq!(chi_ssc(&Graph::complete(7), &b).unwrap().0, 1);
    assert_eq!(chi_ssc(&Graph::path(9), &b).unwrap().0, 1);
    assert_eq!(chi_ssc(&Graph::cycle(4), &b).unwrap().0, 2);
    let mut r = rng(3);
    for _ in 0..30 {
        let g = gnp(&mut r, 8, 0.3);
        assert_eq!(min_dominating_set(&g, &b).unwrap().len(), brute_domination_number(&g));
    }
}

#[test]
fn budgets_are_enforced() {
    let b = OracleBudget::with_max_vertices(5);
    assert!(matches!(exists_ssc(&Graph::path(6), 1, &b), Err(SscError::Resource(_))));
}
