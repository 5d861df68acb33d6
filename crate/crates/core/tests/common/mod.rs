//! Helpers shared by the integration tests: fixture graphs, samplers and
//! brute-force oracles that do not touch the library's own algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use sailkit::graphs::{graph_from_edges, path_star_graph, LabeledGraph, Tag};
use sailkit::words::{prefix, InfiniteWordSpec, Letter};
use sailkit::Caps;

/// Path-star graph of the arithmetic word on stars 3, 6, .., 24 whose five
/// path components read, on those letters, the listed sequences.
pub fn arithmetic_block_example() -> (LabeledGraph, Vec<Vec<usize>>) {
    let reads: [&[Letter]; 5] = [
        &[3, 3, 3, 3, 6],
        &[9, 3, 6, 9, 3, 6, 9],
        &[6, 9, 12, 15, 18, 3, 6, 9, 12, 15],
        &[12, 15, 18, 21, 3, 6, 9, 12, 15],
        &[6, 9, 12, 15, 18, 21, 24, 3, 6, 9],
    ];
    let stars: BTreeSet<Letter> = (1..=8).map(|k| 3 * k).collect();
    let word = prefix(&InfiniteWordSpec::Arithmetic, 2000, &Caps::default()).unwrap().letters;
    let mut positions = BTreeSet::new();
    let mut spans = Vec::new();
    let mut cursor = 0;
    for read in reads {
        let (start, end) = (cursor..word.len())
            .find_map(|s| {
                if word[s] != read[0] {
                    return None;
                }
                let mut k = 0;
                for (e, &l) in word.iter().enumerate().skip(s) {
                    if stars.contains(&l) {
                        if l != read[k] {
                            return None;
                        }
                        k += 1;
                        if k == read.len() {
                            return Some((s, e));
                        }
                    }
                }
                None
            })
            .expect("the reading occurs");
        positions.extend(start + 1..=end + 1);
        spans.push((start + 1..=end + 1).collect());
        cursor = end + 2;
    }
    let g = path_star_graph(&InfiniteWordSpec::Arithmetic, &positions, &stars, &Caps::default()).unwrap();
    (g, spans)
}

/// Random induced path-star graph: a few disjoint position intervals inside
/// `1..=span` and a random subset of the letters they read as stars.
pub fn random_path_star<R: Rng>(rng: &mut R, spec: &InfiniteWordSpec, span: usize, max_vertices: usize) -> LabeledGraph {
    let caps = Caps::default();
    let word = prefix(spec, span, &caps).unwrap().letters;
    loop {
        let mut positions = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=9);
            let start = rng.gen_range(1..=span - len + 1);
            positions.extend(start..start + len);
        }
        let present: BTreeSet<Letter> = positions.iter().map(|&p| word[p - 1]).collect();
        let stars: BTreeSet<Letter> = present.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
        if stars.is_empty() || positions.len() + stars.len() > max_vertices {
            continue;
        }
        return path_star_graph(spec, &positions, &stars, &caps).unwrap();
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> LabeledGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    graph_from_edges(n, &edges).unwrap()
}

fn adjacency_masks(g: &LabeledGraph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|i| g.adj_at(i).iter().fold(0, |m, &j| m | (1u64 << j)))
        .collect()
}

/// Tree-width as the least width over every elimination ordering,
/// enumerated depth first with the filled graph carried along.
pub fn treewidth_by_orderings(g: &LabeledGraph) -> usize {
    fn go(adj: &mut Vec<u64>, alive: u64, sofar: usize, best: &mut usize) {
        if alive == 0 {
            *best = (*best).min(sofar);
            return;
        }
        for v in 0..adj.len() {
            if alive & (1 << v) == 0 {
                continue;
            }
            let nb = adj[v] & alive;
            let w = sofar.max(nb.count_ones() as usize);
            if w >= *best {
                continue;
            }
            let saved = adj.clone();
            for u in 0..adj.len() {
                if nb & (1 << u) != 0 {
                    adj[u] |= nb & !(1 << u);
                }
            }
            go(adj, alive & !(1 << v), w, best);
            *adj = saved;
        }
    }
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut adj = adjacency_masks(g);
    let mut best = n - 1;
    go(&mut adj, (1u64 << n) - 1, 0, &mut best);
    best
}

/// Whether some ordered choice of `t` star-tagged vertices and `t` disjoint
/// induced paths among the other vertices has star `i` adjacent to path `j`
/// for every `i <= j`. Exponential; meant for graphs of at most 14 vertices.
pub fn brute_force_sail(g: &LabeledGraph, t: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 20);
    let adj = adjacency_masks(g);
    let stars: Vec<usize> = (0..n).filter(|&i| matches!(g.tag_at(i), Tag::Star { .. })).collect();
    let star_mask = stars.iter().fold(0u64, |m, &s| m | (1 << s));
    let others = ((1u64 << n) - 1) & !star_mask;
    // every vertex subset of the non-stars inducing a path, with the stars it sees
    let mut paths: Vec<(u64, u64)> = Vec::new();
    let mut sub = others;
    loop {
        if sub != 0 && induces_path(&adj, sub) {
            let seen = (0..n)
                .filter(|&v| sub & (1 << v) != 0)
                .fold(0u64, |m, v| m | adj[v]) & star_mask;
            paths.push((sub, seen));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
    let mut tuple = Vec::new();
    pick_stars(&stars, t, &mut tuple, &paths)
}

fn induces_path(adj: &[u64], set: u64) -> bool {
    let k = set.count_ones() as usize;
    let mut edges = 0;
    let mut first = usize::MAX;
    for v in 0..adj.len() {
        if set & (1 << v) != 0 {
            let d = (adj[v] & set).count_ones();
            if d > 2 {
                return false;
            }
            edges += d as usize;
            first = first.min(v);
        }
    }
    if edges / 2 != k - 1 {
        return false;
    }
    let mut reach = 1u64 << first;
    loop {
        let next = (0..adj.len())
            .filter(|&v| reach & (1 << v) != 0)
            .fold(reach, |m, v| m | (adj[v] & set));
        if next == reach {
            return reach == set;
        }
        reach = next;
    }
}

fn pick_stars(stars: &[usize], t: usize, tuple: &mut Vec<usize>, paths: &[(u64, u64)]) -> bool {
    if tuple.len() == t {
        return place(tuple, t, 0, paths);
    }
    for &s in stars {
        if tuple.contains(&s) {
            continue;
        }
        tuple.push(s);
        let ok = pick_stars(stars, t, tuple, paths);
        tuple.pop();
        if ok {
            return true;
        }
    }
    false
}

fn place(tuple: &[usize], j: usize, used: u64, paths: &[(u64, u64)]) -> bool {
    if j == 0 {
        return true;
    }
    let need = tuple[..j].iter().fold(0u64, |m, &s| m | (1 << s));
    paths
        .iter()
        .any(|&(set, seen)| set & used == 0 && seen & need == need && place(tuple, j - 1, used | set, paths))
}
