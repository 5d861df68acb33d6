use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphs::{LabeledGraph, VertexId};

use super::{width, TdBuilder, TreeDecomposition};

/// Greedy elimination order: least fill-in first, then least degree, then
/// lowest id.
pub fn min_fill_ordering(g: &LabeledGraph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|i| g.adj_at(i).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
            .expect("vertices remain");
        eliminate(&mut adj, v);
        alive[v] = false;
        order.push(g.id_at(v));
    }
    order
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (k, &a) in nb.iter().enumerate() {
        for &b in &nb[k + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    for &a in &nb {
        adj[a].remove(&v);
        for &b in &nb {
            if a != b {
                adj[a].insert(b);
            }
        }
    }
    adj[v].clear();
}

/// Decomposition induced by an elimination order: the bag of `v` is `v` with
/// its later neighbours in the filled graph, hung below the bag of the
/// earliest of those neighbours. Separate trees are chained together.
pub fn decomposition_from_ordering(g: &LabeledGraph, order: &[VertexId]) -> Result<TreeDecomposition> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(TreeDecomposition::single_bag([]));
    }
    let mut rank = vec![usize::MAX; n];
    for (r, &v) in order.iter().enumerate() {
        let i = g.require(v)?;
        if rank[i] != usize::MAX {
            return Err(Error::invalid(format!("vertex {v} repeated in the ordering")));
        }
        rank[i] = r;
    }
    if order.len() != n {
        return Err(Error::invalid("ordering must list every vertex once"));
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|i| g.adj_at(i).iter().copied().collect()).collect();
    let mut td = TdBuilder::default();
    let mut node_of = vec![0; n];
    let mut parent_vertex = vec![None; n];
    for &v in order {
        let i = g.index_of(v).expect("checked");
        let later: Vec<usize> = adj[i].iter().copied().collect();
        let mut bag = later.clone();
        bag.push(i);
        node_of[i] = td.add(bag);
        parent_vertex[i] = later.iter().copied().min_by_key(|&w| rank[w]);
        eliminate(&mut adj, i);
    }
    let mut last_root: Option<usize> = None;
    for &v in order {
        let i = g.index_of(v).expect("checked");
        match parent_vertex[i] {
            Some(p) => td.link(node_of[i], node_of[p]),
            None => {
                if let Some(r) = last_root {
                    td.link(r, node_of[i]);
                }
                last_root = Some(node_of[i]);
            }
        }
    }
    Ok(td.finish(g))
}

/// Min-fill upper bound with the decomposition realising it.
pub fn heuristic_treewidth_upper(g: &LabeledGraph) -> (usize, TreeDecomposition) {
    let order = min_fill_ordering(g);
    let td = decomposition_from_ordering(g, &order).expect("ordering covers the graph");
    (width(&td).expect("at least one bag"), td)
}
