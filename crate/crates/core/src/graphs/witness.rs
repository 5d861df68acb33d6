use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LabeledGraph, VertexId};
use crate::error::Result;

/// Ordered star nodes `s_1 .. s_t` and ordered disjoint paths `P_1 .. P_t`
/// with `s_i` adjacent to `P_j` whenever `i <= j`.
///
/// In a subdivided witness, listed vertices that follow each other on a path
/// and star-to-path links may be joined through unlisted degree-2 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SailWitness {
    pub stars: Vec<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
    #[serde(default)]
    pub subdivided: bool,
}

impl SailWitness {
    pub fn order(&self) -> usize {
        self.stars.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.stars.iter().chain(self.paths.iter().flatten()).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum SailDefect {
    /// Star and path counts differ, or the witness is empty.
    Shape { stars: usize, paths: usize },
    Repeated { vertex: VertexId },
    EmptyPath { path: usize },
    /// Listed vertices `u`, `v` follow each other on path `path` but are not joined.
    Broken { path: usize, u: VertexId, v: VertexId },
    /// Non-consecutive vertices of one path are adjacent.
    Chord { path: usize, u: VertexId, v: VertexId },
    /// Star `i` does not reach path `j` (both 1-based).
    Missing { i: usize, j: usize },
}

impl fmt::Display for SailDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SailDefect::Shape { stars, paths } => write!(f, "{stars} stars but {paths} paths"),
            SailDefect::Repeated { vertex } => write!(f, "vertex {vertex} listed twice"),
            SailDefect::EmptyPath { path } => write!(f, "path {path} is empty"),
            SailDefect::Broken { path, u, v } => write!(f, "path {path}: {u} and {v} are not joined"),
            SailDefect::Chord { path, u, v } => write!(f, "path {path}: chord {u}-{v}"),
            SailDefect::Missing { i, j } => write!(f, "star {i} is not adjacent to path {j}"),
        }
    }
}

/// Follows unlisted degree-2 vertices from `from` through `first`.
/// Returns the interior indices and the first vertex that is listed or does
/// not have degree 2; `None` if the walk returns to `from`.
pub(crate) fn degree_two_chain(
    g: &LabeledGraph,
    from: usize,
    first: usize,
    listed: &[bool],
) -> Option<(Vec<usize>, usize)> {
    let mut interior = Vec::new();
    let (mut prev, mut cur) = (from, first);
    while !listed[cur] && g.adj_at(cur).len() == 2 {
        interior.push(cur);
        let adj = g.adj_at(cur);
        let next = if adj[0] == prev { adj[1] } else { adj[0] };
        if next == from {
            return None;
        }
        prev = cur;
        cur = next;
    }
    Some((interior, cur))
}

/// Every witness condition, reporting the first defect found.
/// Dangling vertex references are an error rather than a defect.
pub fn check_sail_witness(g: &LabeledGraph, w: &SailWitness) -> Result<Option<SailDefect>> {
    for v in w.vertices() {
        g.require(v)?;
    }
    let t = w.stars.len();
    if t == 0 || w.paths.len() != t {
        return Ok(Some(SailDefect::Shape {
            stars: t,
            paths: w.paths.len(),
        }));
    }
    let n = g.vertex_count();
    let mut listed = vec![false; n];
    // owner[v] = Some(k) when v lies on path k (0-based)
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for v in w.vertices() {
        let i = g.require(v)?;
        if listed[i] {
            return Ok(Some(SailDefect::Repeated { vertex: v }));
        }
        listed[i] = true;
    }
    for (k, path) in w.paths.iter().enumerate() {
        if path.is_empty() {
            return Ok(Some(SailDefect::EmptyPath { path: k + 1 }));
        }
        for &v in path {
            owner[g.require(v)?] = Some(k);
        }
    }

    for (k, path) in w.paths.iter().enumerate() {
        let idx: Vec<usize> = path.iter().map(|&v| g.require(v)).collect::<Result<_>>()?;
        for (a, pair) in idx.windows(2).enumerate() {
            let joined = g.has_edge_at(pair[0], pair[1])
                || (w.subdivided
                    && g.adj_at(pair[0]).iter().any(|&first| {
                        !listed[first]
                            && matches!(degree_two_chain(g, pair[0], first, &listed), Some((_, end)) if end == pair[1])
                    }));
            if !joined {
                return Ok(Some(SailDefect::Broken {
                    path: k + 1,
                    u: path[a],
                    v: path[a + 1],
                }));
            }
        }
        for a in 0..idx.len() {
            for b in a + 2..idx.len() {
                if g.has_edge_at(idx[a], idx[b]) {
                    return Ok(Some(SailDefect::Chord {
                        path: k + 1,
                        u: path[a],
                        v: path[b],
                    }));
                }
            }
        }
    }

    for (i, &s) in w.stars.iter().enumerate() {
        let si = g.require(s)?;
        let mut reaches = vec![false; t];
        for &u in g.adj_at(si) {
            let end = if listed[u] {
                Some(u)
            } else if w.subdivided {
                degree_two_chain(g, si, u, &listed).map(|(_, end)| end)
            } else {
                None
            };
            if let Some(k) = end.and_then(|e| owner[e]) {
                reaches[k] = true;
            }
        }
        if let Some(j) = (i..t).find(|&j| !reaches[j]) {
            return Ok(Some(SailDefect::Missing { i: i + 1, j: j + 1 }));
        }
    }
    Ok(None)
}

pub fn is_t_sail_witness(g: &LabeledGraph, w: &SailWitness) -> Result<bool> {
    Ok(check_sail_witness(g, w)?.is_none())
}
