use std::collections::{BTreeMap, BTreeSet};

use super::{GraphBuilder, LabeledGraph, SailWitness, Tag, VertexId};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::words::{InfiniteWordSpec, Letter};

/// Plain graph on ids `0..n`.
pub fn graph_from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<LabeledGraph> {
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex(v, Tag::Plain)?;
    }
    for &(u, v) in edges {
        b.add_edge(u, v)?;
    }
    b.build()
}

pub fn path_graph(n: usize) -> LabeledGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    graph_from_edges(n, &edges).expect("path is simple")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> LabeledGraph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph_from_edges(n, &edges).expect("cycle is simple")
}

pub fn complete_graph(n: usize) -> LabeledGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    graph_from_edges(n, &edges).expect("clique is simple")
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite_graph(a: usize, b: usize) -> LabeledGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    graph_from_edges(a + b, &edges).expect("biclique is simple")
}

/// Coordinates `(x, y)` of the wall's vertices in id order; the vertex with
/// id `y * 2n + x` sits at `(x, y)`.
pub fn wall_coordinates(m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(2 * n * m);
    for y in 0..m {
        for x in 0..2 * n {
            out.push((x, y));
        }
    }
    out
}

/// Brick wall on the `2n x m` grid of points: every horizontal unit edge and
/// the vertical unit edges from `(x, y)` with `x + y` even.
pub fn wall(m: usize, n: usize, caps: &Caps) -> Result<LabeledGraph> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("wall dimensions must be positive"));
    }
    let count = m
        .checked_mul(n)
        .and_then(|v| v.checked_mul(2))
        .ok_or_else(|| Error::limit("wall vertices", usize::MAX, caps.wall_vertices))?;
    if count > caps.wall_vertices {
        return Err(Error::limit("wall vertices", count, caps.wall_vertices));
    }
    let width = 2 * n;
    let id = |x: usize, y: usize| y * width + x;
    let mut b = GraphBuilder::new();
    for v in 0..count {
        b.add_vertex(v, Tag::Plain)?;
    }
    for (x, y) in wall_coordinates(m, n) {
        if x + 1 < width {
            b.add_edge(id(x, y), id(x + 1, y))?;
        }
        if y + 1 < m && (x + y) % 2 == 0 {
            b.add_edge(id(x, y), id(x, y + 1))?;
        }
    }
    b.build()
}

/// One plain vertex per edge of `g` (ids follow the sorted edge list);
/// two are adjacent when the edges share an endpoint.
pub fn line_graph(g: &LabeledGraph) -> LabeledGraph {
    let edges = g.edges();
    let mut incident: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident.entry(u).or_default().push(i);
        incident.entry(v).or_default().push(i);
    }
    let mut b = GraphBuilder::new();
    for i in 0..edges.len() {
        b.add_vertex(i, Tag::Plain).expect("fresh ids");
    }
    for list in incident.values() {
        for (k, &e) in list.iter().enumerate() {
            for &f in &list[k + 1..] {
                // two edges share at most one endpoint in a simple graph
                b.add_edge(e, f).expect("simple");
            }
        }
    }
    b.build().expect("line graph is simple")
}

/// Replaces each planned edge by a path through `count` new subdivision
/// vertices. New ids start above the largest existing id and are handed out
/// in sorted edge order.
pub fn subdivide(g: &LabeledGraph, plan: &BTreeMap<(VertexId, VertexId), usize>) -> Result<LabeledGraph> {
    let mut normalized: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (&(u, v), &count) in plan {
        if !g.has_edge(u, v) {
            return Err(Error::invalid(format!("edge {u}-{v} is not in the graph")));
        }
        let key = (u.min(v), u.max(v));
        if normalized.insert(key, count).is_some() {
            return Err(Error::invalid(format!("edge {u}-{v} planned twice")));
        }
    }
    let mut b = g.to_builder();
    let mut next = g.max_id().map_or(0, |m| m + 1);
    for (&(u, v), &count) in &normalized {
        if count == 0 {
            continue;
        }
        b.remove_edge(u, v);
        let mut prev = u;
        for _ in 0..count {
            b.add_vertex(next, Tag::Subdivision)?;
            b.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        b.add_edge(prev, v)?;
    }
    b.build()
}

/// The triangular `t`-sail: path `P_j` has `j` vertices and star `s_i` is
/// adjacent to the `i`-th vertex of every `P_j` with `j >= i`.
///
/// Stars get ids `0..t` and letters `1..=t`; path vertices are tagged with
/// positions laid out left to right with one unused position between paths,
/// so the tags read like a path-star graph.
pub fn canonical_sail(t: usize) -> Result<(LabeledGraph, SailWitness)> {
    if t == 0 {
        return Err(Error::invalid("sail order must be at least 1"));
    }
    let mut b = GraphBuilder::new();
    for i in 0..t {
        b.add_vertex(i, Tag::Star { letter: i as Letter + 1 })?;
    }
    let mut next = t;
    let mut pos = 1;
    let mut paths = Vec::with_capacity(t);
    for j in 1..=t {
        let mut path = Vec::with_capacity(j);
        for i in 0..j {
            b.add_vertex(next, Tag::Path { pos })?;
            if i > 0 {
                b.add_edge(next - 1, next)?;
            }
            b.add_edge(i, next)?;
            path.push(next);
            next += 1;
            pos += 1;
        }
        pos += 1;
        paths.push(path);
    }
    let witness = SailWitness {
        stars: (0..t).collect(),
        paths,
        subdivided: false,
    };
    Ok((b.build()?, witness))
}

/// Induced subgraph of the path-star graph of `spec` on the given positions
/// and star letters. Stars get ids `0..` in letter order, path vertices
/// follow in position order.
pub fn path_star_graph(
    spec: &InfiniteWordSpec,
    positions: &BTreeSet<usize>,
    letters: &BTreeSet<Letter>,
    caps: &Caps,
) -> Result<LabeledGraph> {
    spec.validate()?;
    if let Some(&last) = positions.last() {
        if last > caps.word_len {
            return Err(Error::limit("path position", last, caps.word_len));
        }
    }
    if positions.contains(&0) {
        return Err(Error::InvalidPosition(0));
    }
    if letters.contains(&0) {
        return Err(Error::invalid("star letters must be positive"));
    }
    let mut b = GraphBuilder::new().family(Some(spec.clone()));
    let mut star_id = BTreeMap::new();
    for (i, &l) in letters.iter().enumerate() {
        b.add_vertex(i, Tag::Star { letter: l })?;
        star_id.insert(l, i);
    }
    let offset = letters.len();
    let mut prev: Option<(usize, VertexId)> = None;
    for (k, &p) in positions.iter().enumerate() {
        let id = offset + k;
        b.add_vertex(id, Tag::Path { pos: p })?;
        if let Some((q, qid)) = prev {
            if q + 1 == p {
                b.add_edge(qid, id)?;
            }
        }
        if let Some(&s) = star_id.get(&spec.letter_at(p)?) {
            b.add_edge(s, id)?;
        }
        prev = Some((p, id));
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{girth, is_bipartite};

    #[test]
    fn wall_counts() {
        let caps = Caps::default();
        let w = wall(4, 4, &caps).unwrap();
        assert_eq!(w.vertex_count(), 32);
        assert_eq!(w.max_degree(), 3);
        assert_eq!(girth(&w), Some(6));
        assert!(is_bipartite(&w));
        assert_eq!(wall(2, 2, &caps).unwrap().vertex_count(), 8);
        assert!(wall(0, 3, &caps).is_err());
        let tiny = Caps {
            wall_vertices: 10,
            ..caps
        };
        assert!(matches!(wall(3, 3, &tiny), Err(Error::Limit { .. })));
    }

    #[test]
    fn line_graph_identities() {
        let p3 = line_graph(&path_graph(4));
        assert_eq!((p3.vertex_count(), p3.edge_count()), (3, 2));
        let tri = line_graph(&cycle_graph(3));
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        let claw = graph_from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let tri = line_graph(&claw);
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        for n in 3..9 {
            let c = line_graph(&line_graph(&cycle_graph(n)));
            assert_eq!((c.vertex_count(), c.edge_count(), girth(&c)), (n, n, Some(n)));
            assert_eq!(c.max_degree(), 2);
        }
    }

    #[test]
    fn subdivision_bookkeeping() {
        let tri = cycle_graph(3);
        let plan: BTreeMap<_, _> = tri.edges().into_iter().map(|e| (e, 1)).collect();
        let hex = subdivide(&tri, &plan).unwrap();
        assert_eq!((hex.vertex_count(), hex.edge_count(), girth(&hex)), (6, 6, Some(6)));

        let zero: BTreeMap<_, _> = tri.edges().into_iter().map(|e| (e, 0)).collect();
        assert_eq!(subdivide(&tri, &zero).unwrap(), tri);

        let k4 = complete_graph(4);
        let plan = BTreeMap::from([((2, 1), 2)]);
        let g = subdivide(&k4, &plan).unwrap();
        // one edge becomes a three-edge path
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 8));
        assert_eq!(g.tag(4), Some(Tag::Subdivision));

        assert!(subdivide(&path_graph(3), &BTreeMap::from([((0, 2), 1)])).is_err());
    }

    #[test]
    fn canonical_sail_sizes() {
        let (g, w) = canonical_sail(7).unwrap();
        assert_eq!(g.vertex_count(), 35);
        assert_eq!(w.stars.len(), 7);
        let (g, _) = canonical_sail(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert!(canonical_sail(0).is_err());
    }

    #[test]
    fn kappa_two_first_section() {
        let spec = InfiniteWordSpec::Power(2);
        let g = path_star_graph(&spec, &(1..=8).collect(), &BTreeSet::from([1, 2]), &Caps::default()).unwrap();
        let pos_of = |v: VertexId| match g.tag(v).unwrap() {
            Tag::Path { pos } => pos,
            _ => unreachable!(),
        };
        let s1: Vec<usize> = g.neighbors(g.star_of(1).unwrap()).map(pos_of).collect();
        let s2: Vec<usize> = g.neighbors(g.star_of(2).unwrap()).map(pos_of).collect();
        assert_eq!(s1, vec![1, 3, 5, 7]);
        assert_eq!(s2, vec![2, 6]);
        assert_eq!(g.edge_count(), 7 + 6);
    }

    #[test]
    fn path_star_edge_cases() {
        let caps = Caps::default();
        let lonely = path_star_graph(&InfiniteWordSpec::Arithmetic, &BTreeSet::new(), &BTreeSet::from([3]), &caps).unwrap();
        assert_eq!((lonely.vertex_count(), lonely.edge_count()), (1, 0));

        let g = path_star_graph(
            &InfiniteWordSpec::Arithmetic,
            &BTreeSet::from([3, 4, 5, 9, 10]),
            &BTreeSet::from([1, 2, 3]),
            &caps,
        )
        .unwrap();
        let path_only = crate::graphs::remove_vertices(&g, &[0, 1, 2]).unwrap();
        let comps = crate::graphs::components(&path_only);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 3);
        assert_eq!(comps[1].len(), 2);
    }
}
