//! Finite labelled graphs, their generators and the structural queries the
//! rest of the crate relies on.
//!
//! Vertices carry stable integer ids; a [`Tag`] records whether a vertex is a
//! path vertex at some word position, the star node of some letter, a
//! subdivision vertex, or plain. Internally vertices are addressed by their
//! index in ascending id order.

mod generators;
mod io;
mod queries;
mod witness;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{InfiniteWordSpec, Letter};

pub use generators::{
    canonical_sail, complete_bipartite_graph, complete_graph, cycle_graph, graph_from_edges,
    line_graph, path_graph, path_star_graph, subdivide, wall, wall_coordinates,
};
pub use io::{graph_from_json, graph_to_dot, graph_to_json};
pub use queries::{
    components, contains_cycle_of_length, contract_edge, girth, induced, is_bipartite,
    is_connected_subset, remove_vertices,
};
pub(crate) use witness::degree_two_chain;
pub use witness::{check_sail_witness, is_t_sail_witness, SailDefect, SailWitness};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Tag {
    Path { pos: usize },
    Star { letter: Letter },
    Subdivision,
    Plain,
}

impl Tag {
    pub fn is_star(&self) -> bool {
        matches!(self, Tag::Star { .. })
    }

    pub fn is_path(&self) -> bool {
        matches!(self, Tag::Path { .. })
    }
}

/// Simple undirected graph with tagged vertices.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    ids: Vec<VertexId>,
    tags: Vec<Tag>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    family: Option<InfiniteWordSpec>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.tags == other.tags && self.adj == other.adj && self.family == other.family
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Vertex ids in ascending order.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub(crate) fn require(&self, v: VertexId) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::invalid(format!("vertex {v} is not in the graph")))
    }

    pub fn id_at(&self, idx: usize) -> VertexId {
        self.ids[idx]
    }

    pub fn tag(&self, v: VertexId) -> Option<Tag> {
        self.index_of(v).map(|i| self.tags[i])
    }

    pub fn tag_at(&self, idx: usize) -> Tag {
        self.tags[idx]
    }

    /// Neighbour indices of the vertex at `idx`, ascending.
    pub fn adj_at(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let list: &[usize] = match self.index_of(v) {
            Some(i) => &self.adj[i],
            None => &[],
        };
        list.iter().map(move |&j| self.ids[j])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.index_of(v).map_or(0, |i| self.adj[i].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.adj[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    pub(crate) fn has_edge_at(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((self.ids[a], self.ids[b]));
                }
            }
        }
        out
    }

    pub fn family(&self) -> Option<&InfiniteWordSpec> {
        self.family.as_ref()
    }

    pub fn with_family(mut self, family: Option<InfiniteWordSpec>) -> Self {
        self.family = family;
        self
    }

    /// Star nodes sorted by letter.
    pub fn stars(&self) -> Vec<(Letter, VertexId)> {
        let mut out: Vec<(Letter, VertexId)> = self
            .tags
            .iter()
            .zip(&self.ids)
            .filter_map(|(t, &id)| match t {
                Tag::Star { letter } => Some((*letter, id)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn star_of(&self, letter: Letter) -> Option<VertexId> {
        self.tags.iter().zip(&self.ids).find_map(|(t, &id)| match t {
            Tag::Star { letter: l } if *l == letter => Some(id),
            _ => None,
        })
    }

    /// Path vertices sorted by position.
    pub fn path_vertices(&self) -> Vec<(usize, VertexId)> {
        let mut out: Vec<(usize, VertexId)> = self
            .tags
            .iter()
            .zip(&self.ids)
            .filter_map(|(t, &id)| match t {
                Tag::Path { pos } => Some((*pos, id)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.ids.last().copied()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for (i, &id) in self.ids.iter().enumerate() {
            b.vertices.insert(id, self.tags[i]);
        }
        b.edges.extend(self.edges());
        b.family = self.family.clone();
        b
    }
}

/// Collects vertices and edges, then checks the graph invariants once.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: BTreeMap<VertexId, Tag>,
    edges: BTreeSet<(VertexId, VertexId)>,
    family: Option<InfiniteWordSpec>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn family(mut self, family: Option<InfiniteWordSpec>) -> Self {
        self.family = family;
        self
    }

    pub fn add_vertex(&mut self, id: VertexId, tag: Tag) -> Result<()> {
        if self.vertices.insert(id, tag).is_some() {
            return Err(Error::invalid(format!("duplicate vertex id {id}")));
        }
        Ok(())
    }

    /// Fails on loops and repeated edges.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::invalid(format!("repeated edge {u}-{v}")));
        }
        Ok(())
    }

    /// Like [`add_edge`](Self::add_edge) but an existing edge is not an error.
    pub fn ensure_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        self.edges.remove(&(u.min(v), u.max(v)))
    }

    pub fn build(self) -> Result<LabeledGraph> {
        let mut letters = BTreeSet::new();
        let mut positions = BTreeSet::new();
        for (&id, tag) in &self.vertices {
            match tag {
                Tag::Star { letter } if !letters.insert(*letter) => {
                    return Err(Error::invalid(format!("second star for letter {letter} (vertex {id})")));
                }
                Tag::Path { pos } if !positions.insert(*pos) => {
                    return Err(Error::invalid(format!("second path vertex at position {pos} (vertex {id})")));
                }
                _ => {}
            }
        }
        let ids: Vec<VertexId> = self.vertices.keys().copied().collect();
        let tags: Vec<Tag> = self.vertices.values().copied().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in &self.edges {
            let (a, b) = match (index.get(&u), index.get(&v)) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(Error::invalid(format!("edge {u}-{v} references an unknown vertex"))),
            };
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(LabeledGraph {
            ids,
            tags,
            index,
            adj,
            family: self.family,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = GraphBuilder::new();
        b.add_vertex(1, Tag::Plain).unwrap();
        assert!(b.add_vertex(1, Tag::Plain).is_err());
        assert!(b.add_edge(1, 1).is_err());
        b.add_vertex(2, Tag::Plain).unwrap();
        b.add_edge(1, 2).unwrap();
        assert!(b.add_edge(2, 1).is_err());
        b.add_edge(2, 7).unwrap();
        assert!(b.build().is_err());

        let mut b = GraphBuilder::new();
        b.add_vertex(0, Tag::Star { letter: 3 }).unwrap();
        b.add_vertex(1, Tag::Star { letter: 3 }).unwrap();
        assert!(b.build().is_err());

        let mut b = GraphBuilder::new();
        b.add_vertex(0, Tag::Path { pos: 3 }).unwrap();
        b.add_vertex(1, Tag::Path { pos: 3 }).unwrap();
        assert!(b.build().is_err());
    }

    #[test]
    fn accessors() {
        let g = graph_from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(g.degree(9), 0);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.to_builder().build().unwrap(), g);
    }
}
