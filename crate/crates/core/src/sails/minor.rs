use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{check_sail_witness, degree_two_chain, is_connected_subset, LabeledGraph, SailWitness, VertexId};

/// Disjoint connected branch sets, pairwise joined by an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum MinorDefect {
    Empty { set: usize },
    Overlap { a: usize, b: usize, vertex: VertexId },
    Disconnected { set: usize },
    NotJoined { a: usize, b: usize },
}

impl fmt::Display for MinorDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorDefect::Empty { set } => write!(f, "branch set {set} is empty"),
            MinorDefect::Overlap { a, b, vertex } => write!(f, "branch sets {a} and {b} share vertex {vertex}"),
            MinorDefect::Disconnected { set } => write!(f, "branch set {set} is not connected"),
            MinorDefect::NotJoined { a, b } => write!(f, "no edge joins branch sets {a} and {b}"),
        }
    }
}

/// Branch set `k` is star `k` with path `k`. For subdivided witnesses it also
/// takes the interior of the chains inside path `k` and, for every `j >= k`,
/// of one chain linking star `k` to path `j`.
pub fn clique_minor_model(g: &LabeledGraph, w: &SailWitness) -> Result<MinorModel> {
    if let Some(defect) = check_sail_witness(g, w)? {
        return Err(Error::invalid(format!("witness does not validate: {defect}")));
    }
    if !w.subdivided {
        let branch_sets = w
            .stars
            .iter()
            .zip(&w.paths)
            .map(|(&s, path)| {
                let mut set = vec![s];
                set.extend(path);
                set
            })
            .collect();
        return Ok(MinorModel { branch_sets });
    }

    let n = g.vertex_count();
    let mut listed = vec![false; n];
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for v in w.vertices() {
        listed[g.require(v)?] = true;
    }
    for (k, path) in w.paths.iter().enumerate() {
        for &v in path {
            owner[g.require(v)?] = Some(k);
        }
    }

    let mut branch_sets = Vec::with_capacity(w.order());
    for (k, (&s, path)) in w.stars.iter().zip(&w.paths).enumerate() {
        let mut set = vec![s];
        set.extend(path);
        let idx: Vec<usize> = path.iter().map(|&v| g.require(v)).collect::<Result<_>>()?;
        for pair in idx.windows(2) {
            if g.has_edge_at(pair[0], pair[1]) {
                continue;
            }
            let chain = g.adj_at(pair[0]).iter().find_map(|&first| {
                if listed[first] {
                    return None;
                }
                match degree_two_chain(g, pair[0], first, &listed) {
                    Some((interior, end)) if end == pair[1] => Some(interior),
                    _ => None,
                }
            });
            set.extend(chain.expect("validated path").into_iter().map(|i| g.id_at(i)));
        }
        let si = g.require(s)?;
        let mut linked = vec![false; w.order()];
        for &u in g.adj_at(si) {
            if listed[u] {
                if let Some(j) = owner[u] {
                    linked[j] = true;
                }
                continue;
            }
            if let Some((interior, end)) = degree_two_chain(g, si, u, &listed) {
                if let Some(j) = owner[end] {
                    if j >= k && !linked[j] {
                        linked[j] = true;
                        set.extend(interior.into_iter().map(|i| g.id_at(i)));
                    }
                }
            }
        }
        branch_sets.push(set);
    }
    Ok(MinorModel { branch_sets })
}

pub fn validate_minor_model(g: &LabeledGraph, model: &MinorModel) -> Result<Option<MinorDefect>> {
    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (a, set) in model.branch_sets.iter().enumerate() {
        for &v in set {
            let i = g.require(v)?;
            match owner[i] {
                Some(b) if b != a => return Ok(Some(MinorDefect::Overlap { a: b, b: a, vertex: v })),
                _ => owner[i] = Some(a),
            }
        }
    }
    for (a, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Ok(Some(MinorDefect::Empty { set: a }));
        }
        if !is_connected_subset(g, set)? {
            return Ok(Some(MinorDefect::Disconnected { set: a }));
        }
    }
    let t = model.branch_sets.len();
    let mut joined = vec![vec![false; t]; t];
    for i in 0..n {
        if let Some(a) = owner[i] {
            for &j in g.adj_at(i) {
                if let Some(b) = owner[j] {
                    joined[a][b] = true;
                }
            }
        }
    }
    for a in 0..t {
        for b in a + 1..t {
            if !joined[a][b] {
                return Ok(Some(MinorDefect::NotJoined { a, b }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graphs::{canonical_sail, path_graph, subdivide};

    #[test]
    fn canonical_models_validate() {
        for t in 1..=6 {
            let (g, w) = canonical_sail(t).unwrap();
            let model = clique_minor_model(&g, &w).unwrap();
            assert_eq!(model.branch_sets.len(), t);
            assert_eq!(validate_minor_model(&g, &model).unwrap(), None);
        }
    }

    #[test]
    fn subdivided_model_validates() {
        let (g, w) = canonical_sail(4).unwrap();
        let plan: BTreeMap<_, _> = g.edges().into_iter().enumerate().map(|(i, e)| (e, i % 3)).collect();
        let h = subdivide(&g, &plan).unwrap();
        let w = SailWitness { subdivided: true, ..w };
        let model = clique_minor_model(&h, &w).unwrap();
        assert_eq!(validate_minor_model(&h, &model).unwrap(), None);
    }

    #[test]
    fn defects() {
        let p = path_graph(4);
        let split = MinorModel { branch_sets: vec![vec![0, 2], vec![1]] };
        assert_eq!(validate_minor_model(&p, &split).unwrap(), Some(MinorDefect::Disconnected { set: 0 }));
        let shared = MinorModel { branch_sets: vec![vec![0, 1], vec![1, 2]] };
        assert_eq!(
            validate_minor_model(&p, &shared).unwrap(),
            Some(MinorDefect::Overlap { a: 0, b: 1, vertex: 1 })
        );
        let apart = MinorModel { branch_sets: vec![vec![0], vec![2, 3]] };
        assert_eq!(validate_minor_model(&p, &apart).unwrap(), Some(MinorDefect::NotJoined { a: 0, b: 1 }));
        let dangling = MinorModel { branch_sets: vec![vec![7]] };
        assert!(validate_minor_model(&p, &dangling).is_err());
    }

    #[test]
    fn invalid_witness_is_rejected() {
        let (g, mut w) = canonical_sail(3).unwrap();
        w.paths[2].clear();
        assert!(matches!(clique_minor_model(&g, &w), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn json_field_name() {
        let m = MinorModel { branch_sets: vec![vec![0, 1]] };
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"branchSets":[[0,1]]}"#);
    }
}
