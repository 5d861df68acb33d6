//! Tree decompositions: representation, validation, exact and heuristic
//! tree-width, and the constructive builders for the three word families.

mod builders;
mod exact;
mod heuristic;
mod reduce;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{LabeledGraph, VertexId};

pub use builders::{build_eta, build_kappa, build_nu, eta_bound, kappa_bound, nu_blocks, nu_bound, NuBlock};
pub use exact::exact_treewidth;
pub use heuristic::{decomposition_from_ordering, heuristic_treewidth_upper, min_fill_ordering};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdNode {
    pub id: NodeId,
    pub bag: Vec<VertexId>,
}

/// A tree of bags. Bags are kept sorted; node ids need not be contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub nodes: Vec<TdNode>,
    pub edges: Vec<[NodeId; 2]>,
}

impl TreeDecomposition {
    pub fn single_bag(bag: impl IntoIterator<Item = VertexId>) -> Self {
        let mut bag: Vec<VertexId> = bag.into_iter().collect();
        bag.sort_unstable();
        bag.dedup();
        TreeDecomposition {
            nodes: vec![TdNode { id: 0, bag }],
            edges: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut td: TreeDecomposition = serde_json::from_str(text)?;
        for node in &mut td.nodes {
            node.bag.sort_unstable();
            node.bag.dedup();
        }
        Ok(td)
    }

    /// Checks that the edges form a tree over the nodes and returns the
    /// node adjacency by position.
    fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>> {
        if self.nodes.is_empty() {
            return Err(Error::Structural("decomposition has no nodes".into()));
        }
        let mut pos = HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if pos.insert(node.id, i).is_some() {
                return Err(Error::Structural(format!("node id {} repeated", node.id)));
            }
        }
        if self.edges.len() + 1 != self.nodes.len() {
            return Err(Error::Structural(format!(
                "{} edges for {} nodes",
                self.edges.len(),
                self.nodes.len()
            )));
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &[a, b] in &self.edges {
            let (Some(&x), Some(&y)) = (pos.get(&a), pos.get(&b)) else {
                return Err(Error::Structural(format!("edge {a}-{b} names an unknown node")));
            };
            if x == y {
                return Err(Error::Structural(format!("loop at node {a}")));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; adj.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != adj.len() {
            return Err(Error::Structural("tree edges do not connect all nodes".into()));
        }
        Ok(adj)
    }
}

/// Largest bag size minus one.
pub fn width(td: &TreeDecomposition) -> Result<usize> {
    td.nodes
        .iter()
        .map(|n| n.bag.len())
        .max()
        .map(|s| s.saturating_sub(1))
        .ok_or_else(|| Error::invalid("decomposition has no nodes"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TdViolation {
    /// The vertex is in no bag.
    Vertex { v: VertexId },
    /// No bag holds both endpoints.
    Edge { u: VertexId, v: VertexId },
    /// The bags holding the vertex are not connected in the tree.
    Disconnected { v: VertexId },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::Vertex { v } => write!(f, "vertex {v} is in no bag"),
            TdViolation::Edge { u, v } => write!(f, "edge {u}-{v} is in no bag"),
            TdViolation::Disconnected { v } => write!(f, "bags containing {v} are not connected"),
        }
    }
}

/// All violations of the three decomposition conditions, in vertex/edge
/// order. A malformed tree is an error; so is a bag naming an unknown vertex.
pub fn validate_decomposition(g: &LabeledGraph, td: &TreeDecomposition) -> Result<Vec<TdViolation>> {
    let adj = td.tree_adjacency()?;
    let n = g.vertex_count();
    // holders[v] = positions of nodes whose bag has v
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, node) in td.nodes.iter().enumerate() {
        for &v in &node.bag {
            holders[g.require(v)?].push(i);
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        if holders[v].is_empty() {
            out.push(TdViolation::Vertex { v: g.id_at(v) });
        }
    }
    let bag_sets: Vec<BTreeSet<usize>> = td
        .nodes
        .iter()
        .map(|node| node.bag.iter().map(|&v| g.index_of(v).expect("checked")).collect())
        .collect();
    for v in 0..n {
        for &w in g.adj_at(v) {
            if w > v && !holders[v].iter().any(|&i| bag_sets[i].contains(&w)) {
                out.push(TdViolation::Edge { u: g.id_at(v), v: g.id_at(w) });
            }
        }
    }
    let mut mark = vec![usize::MAX; td.nodes.len()];
    for v in 0..n {
        let hs = &holders[v];
        if hs.len() <= 1 {
            continue;
        }
        for &i in hs {
            mark[i] = v;
        }
        let mut seen = 1;
        let mut stack = vec![hs[0]];
        mark[hs[0]] = usize::MAX - 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if mark[j] == v {
                    mark[j] = usize::MAX - 1;
                    seen += 1;
                    stack.push(j);
                }
            }
        }
        for &i in hs {
            mark[i] = usize::MAX;
        }
        if seen != hs.len() {
            out.push(TdViolation::Disconnected { v: g.id_at(v) });
        }
    }
    Ok(out)
}

/// Incremental construction with bags over vertex indices of one graph.
#[derive(Debug, Default)]
pub(crate) struct TdBuilder {
    bags: Vec<BTreeSet<usize>>,
    edges: Vec<[usize; 2]>,
}

impl TdBuilder {
    pub(crate) fn add(&mut self, bag: impl IntoIterator<Item = usize>) -> usize {
        self.bags.push(bag.into_iter().collect());
        self.bags.len() - 1
    }

    pub(crate) fn link(&mut self, a: usize, b: usize) {
        self.edges.push([a.min(b), a.max(b)]);
    }

    pub(crate) fn bag(&self, node: usize) -> &BTreeSet<usize> {
        &self.bags[node]
    }

    pub(crate) fn bag_mut(&mut self, node: usize) -> &mut BTreeSet<usize> {
        &mut self.bags[node]
    }

    pub(crate) fn len(&self) -> usize {
        self.bags.len()
    }

    /// First node whose bag contains every vertex of `need`.
    pub(crate) fn find(&self, need: &[usize]) -> Option<usize> {
        self.bags.iter().position(|b| need.iter().all(|v| b.contains(v)))
    }

    pub(crate) fn finish(self, g: &LabeledGraph) -> TreeDecomposition {
        let nodes = self
            .bags
            .into_iter()
            .enumerate()
            .map(|(id, bag)| {
                let mut bag: Vec<VertexId> = bag.into_iter().map(|i| g.id_at(i)).collect();
                bag.sort_unstable();
                TdNode { id, bag }
            })
            .collect();
        let mut edges = self.edges;
        edges.sort_unstable();
        TreeDecomposition { nodes, edges }
    }
}

/// Per-vertex bag counts, used by reports.
pub fn bag_histogram(td: &TreeDecomposition) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for node in &td.nodes {
        *out.entry(node.bag.len()).or_insert(0) += 1;
    }
    out
}
