use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{components, induced, LabeledGraph};

use super::heuristic_treewidth_upper;

/// Exact tree-width, component by component.
///
/// Each component is decided for increasing `k` between a contraction
/// degeneracy lower bound and the min-fill upper bound by a search over
/// eliminated vertex sets `S`: a vertex `v` may be eliminated next when the
/// vertices outside `S + v` reachable from `v` through `S` number at most `k`.
/// Failed sets are memoised. Vertices with at most one such neighbour, or two
/// when `k >= 2`, are eliminated without branching.
pub fn exact_treewidth(g: &LabeledGraph, caps: &Caps) -> Result<usize> {
    let cap = caps.exact_tw_vertices.min(64);
    if g.vertex_count() > cap {
        return Err(Error::limit("exact tree-width vertices", g.vertex_count(), cap));
    }
    let mut best = 0;
    for comp in components(g) {
        if comp.len() <= best + 1 {
            continue;
        }
        let h = induced(g, &comp)?;
        let adj: Vec<u64> = (0..h.vertex_count())
            .map(|i| h.adj_at(i).iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect();
        let (upper, _) = heuristic_treewidth_upper(&h);
        let lower = contraction_degeneracy(&adj).max(best);
        let mut tw = upper.max(best);
        for k in lower..upper {
            let mut solver = Solver {
                adj: &adj,
                all: full(adj.len()),
                k,
                failed: HashSet::new(),
            };
            if solver.feasible(0) {
                tw = k;
                break;
            }
        }
        best = best.max(tw);
    }
    Ok(best)
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

struct Solver<'a> {
    adj: &'a [u64],
    all: u64,
    k: usize,
    failed: HashSet<u64>,
}

impl Solver<'_> {
    // Vertices outside `s + v` joined to `v` by a path through `s`.
    fn q_set(&self, s: u64, v: usize) -> u64 {
        let mut inside = 1u64 << v;
        let mut frontier = inside;
        let mut reach = 0u64;
        while frontier != 0 {
            let nb = bits(frontier).fold(0u64, |m, u| m | self.adj[u]);
            reach |= nb & !s;
            frontier = nb & s & !inside;
            inside |= frontier;
        }
        reach & !(1u64 << v)
    }

    fn feasible(&mut self, s: u64) -> bool {
        let rest = self.all & !s;
        if rest.count_ones() as usize <= self.k + 1 {
            return true;
        }
        if self.failed.contains(&s) {
            return false;
        }
        let mut cands = Vec::new();
        for v in bits(rest) {
            let q = self.q_set(s, v).count_ones() as usize;
            if q > self.k {
                continue;
            }
            if q <= 1 || (q == 2 && self.k >= 2) {
                let ok = self.feasible(s | (1 << v));
                if !ok {
                    self.failed.insert(s);
                }
                return ok;
            }
            cands.push((q, v));
        }
        cands.sort_unstable();
        for (_, v) in cands {
            if self.feasible(s | (1 << v)) {
                return true;
            }
        }
        self.failed.insert(s);
        false
    }
}

// Repeatedly contract a minimum-degree vertex into its least-degree
// neighbour; the largest minimum degree seen bounds the tree-width below.
fn contraction_degeneracy(adj: &[u64]) -> usize {
    let mut adj = adj.to_vec();
    let mut alive = full(adj.len());
    let mut lower = 0;
    while alive.count_ones() > 1 {
        let v = bits(alive).min_by_key(|&v| (adj[v] & alive).count_ones()).expect("alive");
        let nb = adj[v] & alive;
        lower = lower.max(nb.count_ones() as usize);
        alive &= !(1 << v);
        if let Some(u) = bits(nb).min_by_key(|&u| (adj[u] & alive).count_ones()) {
            let merged = nb & !(1 << u);
            adj[u] |= merged;
            for w in bits(merged) {
                adj[w] |= 1 << u;
            }
        }
    }
    lower
}
