use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{complete_bipartite_graph, complete_graph, line_graph, wall, LabeledGraph};

use super::subdivision::contains_subdivision;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternStatus {
    Present,
    Absent,
    /// The search was not run because the host exceeds the cap.
    Cap,
}

/// Status per pattern name, in the order the patterns were scanned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KkwReport {
    pub patterns: BTreeMap<String, PatternStatus>,
}

impl KkwReport {
    pub fn all_absent(&self) -> bool {
        self.patterns.values().all(|&s| s == PatternStatus::Absent)
    }
}

/// `K5`, `K4,4`, the 4x4 wall and its line graph.
pub fn kkw_patterns() -> Vec<(&'static str, LabeledGraph)> {
    let w = wall(4, 4, &Caps::default()).expect("small wall");
    vec![
        ("K5", complete_graph(5)),
        ("K4,4", complete_bipartite_graph(4, 4)),
        ("W4x4", w.clone()),
        ("L(W4x4)", line_graph(&w)),
    ]
}

/// Looks for a subdivision of each fixed pattern. Hosts over the cap are
/// reported as `cap` for every pattern rather than rejected.
pub fn kkw_scan(g: &LabeledGraph, caps: &Caps) -> Result<KkwReport> {
    let mut patterns = BTreeMap::new();
    for (name, pattern) in kkw_patterns() {
        let status = match contains_subdivision(g, &pattern, caps) {
            Ok(Some(_)) => PatternStatus::Present,
            Ok(None) => PatternStatus::Absent,
            Err(Error::Limit { .. }) => PatternStatus::Cap,
            Err(e) => return Err(e),
        };
        patterns.insert(name.to_string(), status);
    }
    Ok(KkwReport { patterns })
}
