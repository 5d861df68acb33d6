use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{path_star_graph, remove_vertices, LabeledGraph, Tag, VertexId};
use crate::words::{InfiniteWordSpec, Letter};

/// Whether deleting the path vertices reading the first letter or the
/// `j`-th letter separates the stars of the `i`-th and `k`-th letters.
/// Indices are 1-based into the sorted star letters and need
/// `1 < i < j < k <= n`.
pub fn separator_check(
    spec: &InfiniteWordSpec,
    positions: &BTreeSet<usize>,
    star_letters: &BTreeSet<Letter>,
    i: usize,
    j: usize,
    k: usize,
    caps: &Caps,
) -> Result<bool> {
    let x: Vec<Letter> = star_letters.iter().copied().collect();
    if !(1 < i && i < j && j < k && k <= x.len()) {
        return Err(Error::invalid(format!(
            "need 1 < i < j < k <= {}, got ({i}, {j}, {k})",
            x.len()
        )));
    }
    let g = path_star_graph(spec, positions, star_letters, caps)?;
    let (first, middle) = (x[0], x[j - 1]);
    let mut drop = Vec::new();
    for (pos, v) in g.path_vertices() {
        let letter = spec.letter_at(pos)?;
        if letter == first || letter == middle {
            drop.push(v);
        }
    }
    let h = remove_vertices(&g, &drop)?;
    let from = h.star_of(x[i - 1]).expect("stars are kept");
    let to = h.star_of(x[k - 1]).expect("stars are kept");
    Ok(!reachable(&h, from, to))
}

fn reachable(g: &LabeledGraph, from: VertexId, to: VertexId) -> bool {
    let start = g.index_of(from).expect("present");
    let goal = g.index_of(to).expect("present");
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        if v == goal {
            return true;
        }
        for &w in g.adj_at(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    debug_assert!(matches!(g.tag_at(start), Tag::Star { .. }));
    false
}
