use std::collections::{BTreeSet, VecDeque};

use super::{GraphBuilder, LabeledGraph, VertexId};
use crate::error::{Error, Result};

/// Connected components as sorted id lists, ordered by smallest id.
pub fn components(g: &LabeledGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.adj_at(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp.into_iter().map(|i| g.id_at(i)).collect());
    }
    out
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &LabeledGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for &w in g.adj_at(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// True if some cycle has exactly `len` vertices.
pub fn contains_cycle_of_length(g: &LabeledGraph, len: usize) -> bool {
    if len < 3 {
        return false;
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    // only cycles whose smallest index is `start` are explored from `start`
    fn extend(g: &LabeledGraph, start: usize, v: usize, depth: usize, len: usize, on_path: &mut [bool]) -> bool {
        if depth == len {
            return g.has_edge_at(v, start);
        }
        for &w in g.adj_at(v) {
            if w > start && !on_path[w] {
                on_path[w] = true;
                let found = extend(g, start, w, depth + 1, len, on_path);
                on_path[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    for start in 0..n {
        on_path[start] = true;
        let found = extend(g, start, start, 1, len, &mut on_path);
        on_path[start] = false;
        if found {
            return true;
        }
    }
    false
}

/// Subgraph induced by `keep`; tags and family are preserved.
pub fn induced(g: &LabeledGraph, keep: &[VertexId]) -> Result<LabeledGraph> {
    let mut chosen = vec![false; g.vertex_count()];
    for &v in keep {
        chosen[g.require(v)?] = true;
    }
    induced_by_mask(g, &chosen)
}

/// Subgraph induced by the complement of `drop`.
pub fn remove_vertices(g: &LabeledGraph, drop: &[VertexId]) -> Result<LabeledGraph> {
    let mut chosen = vec![true; g.vertex_count()];
    for &v in drop {
        chosen[g.require(v)?] = false;
    }
    induced_by_mask(g, &chosen)
}

pub(crate) fn induced_by_mask(g: &LabeledGraph, chosen: &[bool]) -> Result<LabeledGraph> {
    let mut b = GraphBuilder::new().family(g.family().cloned());
    for i in (0..g.vertex_count()).filter(|&i| chosen[i]) {
        b.add_vertex(g.id_at(i), g.tag_at(i))?;
        for &j in g.adj_at(i) {
            if j > i && chosen[j] {
                b.add_edge(g.id_at(i), g.id_at(j))?;
            }
        }
    }
    b.build()
}

/// True if `set` is non-empty and induces a connected subgraph.
pub fn is_connected_subset(g: &LabeledGraph, set: &[VertexId]) -> Result<bool> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[g.require(v)?] = true;
    }
    let Some(&first) = set.first() else {
        return Ok(false);
    };
    let start = g.require(first)?;
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.adj_at(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    let distinct = inside.iter().filter(|&&b| b).count();
    Ok(reached == distinct)
}

pub fn is_bipartite(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.adj_at(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Contracts the edge `u`-`v` into `u`. The result keeps `u`'s tag and drops
/// the word family, since a contraction generally leaves the class.
pub fn contract_edge(g: &LabeledGraph, u: VertexId, v: VertexId) -> Result<LabeledGraph> {
    if !g.has_edge(u, v) {
        return Err(Error::invalid(format!("{u}-{v} is not an edge")));
    }
    let mut b = GraphBuilder::new();
    for &id in g.ids() {
        if id != v {
            b.add_vertex(id, g.tag(id).expect("present"))?;
        }
    }
    let mut edges = BTreeSet::new();
    for (a, c) in g.edges() {
        let a = if a == v { u } else { a };
        let c = if c == v { u } else { c };
        if a != c {
            edges.insert((a.min(c), a.max(c)));
        }
    }
    for (a, c) in edges {
        b.add_edge(a, c)?;
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graphs::{complete_graph, cycle_graph, graph_from_edges, path_graph, wall, wall_coordinates};

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle_graph(5)), Some(5));
        assert_eq!(girth(&path_graph(6)), None);
        assert_eq!(girth(&complete_graph(4)), Some(3));
        // two triangles joined by a long path: girth from the triangles
        let g = graph_from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        assert_eq!(girth(&g), Some(3));
    }

    #[test]
    fn cycle_lengths() {
        let w = wall(4, 4, &Caps::default()).unwrap();
        assert!(!contains_cycle_of_length(&w, 4));
        assert!(contains_cycle_of_length(&w, 6));
        assert!(contains_cycle_of_length(&w, 10));
        let k4 = complete_graph(4);
        assert!(contains_cycle_of_length(&k4, 3) && contains_cycle_of_length(&k4, 4));
        assert!(!contains_cycle_of_length(&k4, 5));
    }

    #[test]
    fn induced_examples() {
        let k5 = complete_graph(5);
        assert_eq!(induced(&k5, k5.ids()).unwrap(), k5);
        let tri = induced(&k5, &[0, 2, 4]).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        assert!(induced(&k5, &[9]).is_err());

        let w = wall(4, 4, &Caps::default()).unwrap();
        // the brick spanning x = 0..2 between rows 0 and 1
        let coords = wall_coordinates(4, 4);
        let brick: Vec<VertexId> = coords
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| x <= 2 && y <= 1)
            .map(|(id, _)| id)
            .collect();
        let c6 = induced(&w, &brick).unwrap();
        assert_eq!((c6.vertex_count(), c6.edge_count(), c6.max_degree()), (6, 6, 2));
        assert_eq!(girth(&c6), Some(6));
    }

    #[test]
    fn contraction() {
        let c5 = cycle_graph(5);
        let c4 = contract_edge(&c5, 0, 1).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        let tri = contract_edge(&cycle_graph(4), 0, 1).unwrap();
        assert_eq!(tri.edge_count(), 3);
        assert!(contract_edge(&c5, 0, 2).is_err());
    }

    #[test]
    fn connectivity() {
        let p = path_graph(5);
        assert!(is_connected_subset(&p, &[1, 2, 3]).unwrap());
        assert!(!is_connected_subset(&p, &[1, 3]).unwrap());
        assert!(!is_connected_subset(&p, &[]).unwrap());
        assert_eq!(components(&remove_vertices(&p, &[2]).unwrap()), vec![vec![0, 1], vec![3, 4]]);
    }
}
