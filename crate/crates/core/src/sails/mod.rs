//! Building, finding and certifying t-sails.

mod minor;
mod search;
mod surgery;

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{check_sail_witness, path_star_graph, LabeledGraph, SailDefect, SailWitness, Tag, VertexId};
use crate::words::{InfiniteWordSpec, Letter};

pub use minor::{clique_minor_model, validate_minor_model, MinorDefect, MinorModel};
pub use search::find_sail_witness;
pub use surgery::sail_girth_surgery;

/// Path-star graph on the union of `intervals` and the stars of `letters`,
/// with the witness taking star `letters[k]` and the path of interval `k` as
/// its `k`-th pair.
pub fn build_sail_from_intervals(
    spec: &InfiniteWordSpec,
    intervals: &[(usize, usize)],
    letters: &[Letter],
    caps: &Caps,
) -> Result<(LabeledGraph, SailWitness)> {
    if intervals.len() != letters.len() || letters.is_empty() {
        return Err(Error::invalid(format!(
            "{} intervals for {} letters",
            intervals.len(),
            letters.len()
        )));
    }
    let mut positions = BTreeSet::new();
    for &(a, b) in intervals {
        if a == 0 || b < a {
            return Err(Error::invalid(format!("bad interval [{a}, {b}]")));
        }
        for p in a..=b {
            if !positions.insert(p) {
                return Err(Error::invalid(format!("intervals overlap at position {p}")));
            }
        }
    }
    let star_letters: BTreeSet<Letter> = letters.iter().copied().collect();
    if star_letters.len() != letters.len() {
        return Err(Error::invalid("letters must be distinct"));
    }
    let g = path_star_graph(spec, &positions, &star_letters, caps)?;

    let position_ids: std::collections::HashMap<usize, VertexId> = g
        .path_vertices()
        .into_iter()
        .collect();
    let witness = SailWitness {
        stars: letters
            .iter()
            .map(|&l| g.star_of(l).expect("star was added"))
            .collect(),
        paths: intervals
            .iter()
            .map(|&(a, b)| (a..=b).map(|p| position_ids[&p]).collect())
            .collect(),
        subdivided: false,
    };
    match check_sail_witness(&g, &witness)? {
        None => Ok((g, witness)),
        Some(SailDefect::Missing { i, j }) => Err(Error::Construction(format!(
            "interval {j} does not contain letter {} (pair ({i}, {j}))",
            letters[i - 1]
        ))),
        Some(other) => Err(Error::Construction(other.to_string())),
    }
}

/// Ids of star-tagged vertices in ascending id order.
pub(crate) fn star_ids(g: &LabeledGraph) -> Vec<VertexId> {
    g.ids()
        .iter()
        .copied()
        .filter(|&v| matches!(g.tag(v), Some(Tag::Star { .. })))
        .collect()
}
