use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GraphBuilder, LabeledGraph, Tag, VertexId};
use crate::error::Result;
use crate::words::InfiniteWordSpec;

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    tag: Tag,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<InfiniteWordSpec>,
    vertices: Vec<VertexJson>,
    edges: Vec<[VertexId; 2]>,
}

/// `{"vertices":[{"id":..,"tag":{..}}],"edges":[[u,v],..]}` with vertices
/// sorted by id and edges as sorted `u < v` pairs. A word family, when known,
/// is stored under `"family"`.
pub fn graph_to_json(g: &LabeledGraph) -> String {
    let doc = GraphJson {
        family: g.family().cloned(),
        vertices: g
            .ids()
            .iter()
            .enumerate()
            .map(|(i, &id)| VertexJson { id, tag: g.tag_at(i) })
            .collect(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<LabeledGraph> {
    let doc: GraphJson = serde_json::from_str(text)?;
    let mut b = GraphBuilder::new().family(doc.family);
    for v in doc.vertices {
        b.add_vertex(v.id, v.tag)?;
    }
    for [u, v] in doc.edges {
        b.add_edge(u, v)?;
    }
    b.build()
}

/// Graphviz rendering; stars are labelled `s<letter>`, path vertices
/// `p<position>`, subdivision vertices `d<id>`.
pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph G {\n");
    for (i, &id) in g.ids().iter().enumerate() {
        let (label, shape) = match g.tag_at(i) {
            Tag::Star { letter } => (format!("s{letter}"), "box"),
            Tag::Path { pos } => (format!("p{pos}"), "circle"),
            Tag::Subdivision => (format!("d{id}"), "point"),
            Tag::Plain => (id.to_string(), "circle"),
        };
        writeln!(out, "  {id} [label=\"{label}\", shape={shape}];").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
