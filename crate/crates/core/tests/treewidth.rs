mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sailkit::decomposition::{exact_treewidth, heuristic_treewidth_upper, validate_decomposition, width, TreeDecomposition};
use sailkit::graphs::{contract_edge, graph_from_edges, remove_vertices, LabeledGraph};
use sailkit::sails::build_sail_from_intervals;
use sailkit::words::{find_increasing_intervals, InfiniteWordSpec, Letter};
use sailkit::Caps;

fn tw(g: &LabeledGraph) -> usize {
    exact_treewidth(g, &Caps::default()).unwrap()
}

#[test]
fn agrees_with_all_orderings_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.1..0.9);
        let g = common::random_graph(&mut rng, n, p);
        assert_eq!(tw(&g), common::treewidth_by_orderings(&g), "{:?}", g.edges());
    }
}

#[test]
fn heuristic_never_beats_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let n = rng.gen_range(2..=16);
        let p = rng.gen_range(0.1..0.6);
        let g = common::random_graph(&mut rng, n, p);
        let (w, td) = heuristic_treewidth_upper(&g);
        assert!(validate_decomposition(&g, &td).unwrap().is_empty());
        assert_eq!(width(&td).unwrap(), w);
        assert!(tw(&g) <= w);
    }
}

#[test]
fn interval_sails_meet_the_lower_bound() {
    for spec in [InfiniteWordSpec::Arithmetic, InfiniteWordSpec::Power(2), InfiniteWordSpec::FibonacciType] {
        for t in 1..=5u32 {
            let letters: Vec<Letter> = (1..=t).collect();
            let intervals = find_increasing_intervals(&spec, &letters, 10_000).unwrap();
            let (g, _) = build_sail_from_intervals(&spec, &intervals, &letters, &Caps::default()).unwrap();
            if g.vertex_count() > 22 {
                continue;
            }
            let exact = tw(&g);
            let trivial = width(&TreeDecomposition::single_bag(g.ids().iter().copied())).unwrap();
            assert!(t as usize - 1 <= exact && exact <= trivial, "{spec} t={t}");
        }
    }
}

#[test]
fn reduction_inequality_over_star_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for spec in [InfiniteWordSpec::Arithmetic, InfiniteWordSpec::Power(2), InfiniteWordSpec::FibonacciType] {
        for _ in 0..8 {
            let g = common::random_path_star(&mut rng, &spec, 50, 18);
            let whole = tw(&g);
            let stars: Vec<usize> = g.stars().into_iter().map(|(_, s)| s).collect();
            for mask in 0u32..(1 << stars.len().min(6)) {
                let u: Vec<usize> = (0..stars.len()).filter(|k| mask & (1 << k) != 0).map(|k| stars[k]).collect();
                let rest = tw(&remove_vertices(&g, &u).unwrap());
                assert!(rest <= whole && whole <= u.len() + rest);
            }
        }
    }
}

#[test]
fn moderate_hosts_finish_quickly() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start = Instant::now();
    for _ in 0..5 {
        let g = common::random_graph(&mut rng, 22, 0.25);
        let exact = tw(&g);
        assert!(exact <= heuristic_treewidth_upper(&g).0);
    }
    assert!(start.elapsed().as_secs() < 60);
}

fn small_graph() -> impl Strategy<Value = LabeledGraph> {
    (2usize..=14)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            graph_from_edges(n, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_never_raises_treewidth(g in small_graph(), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let h = contract_edge(&g, u, v).unwrap();
        prop_assert!(tw(&h) <= tw(&g));
    }

    #[test]
    fn deleting_vertices_never_raises_treewidth(g in small_graph(), drop in proptest::collection::btree_set(0usize..14, 0..4)) {
        let drop: Vec<usize> = drop.into_iter().filter(|&v| g.contains(v)).collect::<BTreeSet<_>>().into_iter().collect();
        let h = remove_vertices(&g, &drop).unwrap();
        prop_assert!(tw(&h) <= tw(&g));
    }
}
