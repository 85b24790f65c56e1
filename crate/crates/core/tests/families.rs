mod common;

use common::{brute_force_exists, gnp, rng};
use rand::Rng;
use ssc_core::families::{
    constructive_coloring, generate, is_chordal, vc_to_chordal, x3c_has_exact_cover, x3c_to_ssc,
    FamilySpec, X3cInstance,
};
use ssc_core::treewidth::solve_treewidth;
use ssc_core::{chi_ssc, is_valid, Graph, OracleBudget};

fn chi(g: &Graph) -> usize {
    chi_ssc(g, &OracleBudget::default()).unwrap().0
}

fn matrix() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 1..=40 {
        specs.push(FamilySpec::Path { n });
        specs.push(FamilySpec::Complete { n: n.min(12) });
        specs.push(FamilySpec::Tree { n, seed: n as u64 });
        specs.push(FamilySpec::Cograph { n, seed: n as u64 });
    }
    for n in 3..=40 {
        specs.push(FamilySpec::Cycle { n });
    }
    for a in 1..=6 {
        for b in 1..=6 {
            specs.push(FamilySpec::CompleteBipartite { a, b });
        }
    }
    let mut r = rng(4);
    for _ in 0..30 {
        let len = r.gen_range(1..=20);
        specs.push(FamilySpec::Threshold {
            sequence: (0..len).map(|_| r.gen_bool(0.5)).collect(),
        });
        let spine = r.gen_range(1..=8);
        specs.push(FamilySpec::Caterpillar {
            leaves: (0..spine).map(|_| r.gen_range(0..=4)).collect(),
        });
    }
    for rows in 1..=7 {
        for cols in 1..=7 {
            specs.push(FamilySpec::Grid { rows, cols });
        }
    }
    for seed in 0..30 {
        specs.push(FamilySpec::BipartitePermutation { n: 2 + seed as usize % 12, seed });
    }
    specs
}

#[test]
fn constructive_colourings_are_valid_and_within_bounds() {
    for spec in matrix() {
        let inst = generate(&spec).unwrap();
        let c = constructive_coloring(&inst).unwrap();
        assert!(is_valid(&inst.graph, &c), "{spec:?}: {c:?}");
        let bound = spec.color_bound().unwrap_or_else(|| inst.graph.max_degree().max(1));
        assert!(c.num_colors_used() <= bound, "{spec:?} used {}", c.num_colors_used());
    }
}

#[test]
fn cycle_recipe_holds_up_to_thirty() {
    for n in 3..=30 {
        let inst = generate(&FamilySpec::Cycle { n }).unwrap();
        let c = constructive_coloring(&inst).unwrap();
        assert!(is_valid(&inst.graph, &c));
        assert_eq!(c.num_colors_used(), if n % 3 == 0 { 1 } else { 2 });
    }
}

#[test]
fn exact_values_where_equality_is_claimed() {
    let g = |s| generate(&s).unwrap().graph;
    for n in 2..=9 {
        assert_eq!(chi(&g(FamilySpec::Path { n })), 1);
    }
    for n in 3..=9 {
        assert_eq!(chi(&g(FamilySpec::Cycle { n })), if n % 3 == 0 { 1 } else { 2 }, "C{n}");
    }
    for a in 2..=4 {
        for b in 2..=4 {
            assert_eq!(chi(&g(FamilySpec::CompleteBipartite { a, b })), 2);
        }
    }
    // every spine vertex carries three leaves
    assert_eq!(chi(&g(FamilySpec::Caterpillar { leaves: vec![3, 3, 3] })), 3);
    assert_eq!(chi(&g(FamilySpec::Grid { rows: 3, cols: 3 })), 2);
    assert_eq!(chi(&g(FamilySpec::Honeycomb { size: 1 })), 1);
}

#[test]
fn lower_bound_families() {
    let g = |s| generate(&s).unwrap().graph;
    assert_eq!(chi(&g(FamilySpec::TreeLb { d: 2 })), 2);
    assert_eq!(chi(&g(FamilySpec::TreeLb { d: 3 })), 3);
    let split = g(FamilySpec::SplitLb { n: 3 });
    assert!(!brute_force_exists(&split, 2));
}

#[test]
fn cographs_need_at_most_two() {
    for seed in 0..20 {
        let inst = generate(&FamilySpec::Cograph { n: 9, seed }).unwrap();
        assert!(chi(&inst.graph) <= 2);
    }
}

fn random_x3c(r: &mut impl Rng) -> X3cInstance {
    let universe = 3 * r.gen_range(1..=2);
    let m = r.gen_range(1..=4);
    let sets = (0..m)
        .map(|_| {
            let mut s = [0; 3];
            let mut picked = Vec::new();
            while picked.len() < 3 {
                let x = r.gen_range(0..universe);
                if !picked.contains(&x) {
                    picked.push(x);
                }
            }
            s.copy_from_slice(&picked);
            s
        })
        .collect();
    X3cInstance::new(universe, sets).unwrap()
}

#[test]
fn x3c_reduction_is_faithful() {
    let mut r = rng(31);
    for _ in 0..20 {
        let inst = random_x3c(&mut r);
        let q = 2;
        let (g, _) = x3c_to_ssc(&inst, q).unwrap();
        let got = solve_treewidth(&g, q).unwrap();
        assert_eq!(got.is_some(), x3c_has_exact_cover(&inst), "{inst:?} q={q}");
        if let Some(w) = got {
            assert!(is_valid(&g, &w));
        }
    }
    let yes = X3cInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 1, 3]]).unwrap();
    assert!(solve_treewidth(&x3c_to_ssc(&yes, 2).unwrap().0, 2).unwrap().is_some());
    let single = X3cInstance::new(3, vec![[0, 1, 2]]).unwrap();
    assert!(solve_treewidth(&x3c_to_ssc(&single, 2).unwrap().0, 2).unwrap().is_some());
    // larger palettes on the smallest universe
    let no = X3cInstance::new(6, vec![[0, 1, 2], [0, 4, 5]]).unwrap();
    assert!(solve_treewidth(&x3c_to_ssc(&single, 3).unwrap().0, 3).unwrap().is_some());
    assert!(solve_treewidth(&x3c_to_ssc(&no, 3).unwrap().0, 3).unwrap().is_none());
}

fn brute_vc(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| g.edges().all(|(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

#[test]
fn vertex_cover_reduction_is_faithful() {
    let mut r = rng(17);
    let mut cases = vec![(Graph::cycle(4), 2), (Graph::complete(4), 2), (Graph::path(2), 1)];
    for _ in 0..10 {
        let n = r.gen_range(2..=5);
        cases.push((gnp(&mut r, n, 0.5), r.gen_range(1..=3)));
    }
    for (g, k) in cases {
        let (h, _) = vc_to_chordal(&g, k).unwrap();
        assert!(is_chordal(&h));
        let got = solve_treewidth(&h, k).unwrap();
        assert_eq!(got.is_some(), brute_vc(&g) <= k, "{g:?} k={k}");
        if let Some(w) = got {
            assert!(is_valid(&h, &w));
        }
    }
}
