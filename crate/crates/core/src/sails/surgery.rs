use crate::error::{Error, Result};
use crate::graphs::{check_sail_witness, remove_vertices, LabeledGraph, SailWitness, Tag, VertexId};
use crate::words::InfiniteWordSpec;

/// Deletes star nodes from a (subdivided) sail to break every `m`-cycle.
///
/// The first `m` stars of the witness go first (the first `q` for a power
/// word with `q > m`), which breaks the cycles through a single star. Of the
/// remaining stars every second one is then deleted, keeping the first,
/// third, and so on, which breaks the cycles through two consecutive stars.
/// Subdivision vertices left dangling are pruned. The returned witness pairs
/// each surviving star with its original path and every later surviving
/// star's path.
pub fn sail_girth_surgery(g: &LabeledGraph, w: &SailWitness, m: usize) -> Result<(LabeledGraph, SailWitness)> {
    if m <= 3 {
        return Err(Error::Precondition(format!("cycle length must exceed 3, got {m}")));
    }
    let t = w.order();
    if t <= 2 * m {
        return Err(Error::Precondition(format!("sail order {t} must exceed 2m = {}", 2 * m)));
    }
    let family = g
        .family()
        .ok_or_else(|| Error::Precondition("graph carries no word family".into()))?;
    let first = match family {
        InfiniteWordSpec::Power(q) if *q as usize > m => *q as usize,
        InfiniteWordSpec::ExplicitPeriodic(_) => {
            return Err(Error::Precondition("surgery applies to the arithmetic, power and Fibonacci-type families".into()))
        }
        _ => m,
    };
    if let Some(defect) = check_sail_witness(g, w)? {
        return Err(Error::invalid(format!("witness does not validate: {defect}")));
    }
    if first >= t {
        return Err(Error::Precondition(format!("removing {first} stars leaves none of {t}")));
    }

    let kept_ranks: Vec<usize> = (first..t).step_by(2).collect();
    let removed: Vec<VertexId> = (0..t)
        .filter(|k| !kept_ranks.contains(k))
        .map(|k| w.stars[k])
        .collect();
    let mut h = remove_vertices(g, &removed)?;
    loop {
        let dangling: Vec<VertexId> = h
            .ids()
            .iter()
            .copied()
            .filter(|&v| h.tag(v) == Some(Tag::Subdivision) && h.degree(v) <= 1)
            .collect();
        if dangling.is_empty() {
            break;
        }
        h = remove_vertices(&h, &dangling)?;
    }
    let witness = SailWitness {
        stars: kept_ranks.iter().map(|&k| w.stars[k]).collect(),
        paths: kept_ranks.iter().map(|&k| w.paths[k].clone()).collect(),
        subdivided: w.subdivided,
    };
    debug_assert_eq!(check_sail_witness(&h, &witness).ok().flatten(), None);
    Ok((h, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graphs::{contains_cycle_of_length, is_t_sail_witness};
    use crate::sails::build_sail_from_intervals;
    use crate::words::{find_increasing_intervals, Letter};

    fn interval_sail(spec: InfiniteWordSpec, t: u32) -> (LabeledGraph, SailWitness) {
        let letters: Vec<Letter> = (1..=t).collect();
        let intervals = find_increasing_intervals(&spec, &letters, 1_000_000).unwrap();
        build_sail_from_intervals(&spec, &intervals, &letters, &Caps::default()).unwrap()
    }

    #[test]
    fn arithmetic_ten_sail() {
        let (g, w) = interval_sail(InfiniteWordSpec::Arithmetic, 10);
        let (h, v) = sail_girth_surgery(&g, &w, 4).unwrap();
        assert!(v.order() >= 3);
        assert!(is_t_sail_witness(&h, &v).unwrap());
        assert!(!contains_cycle_of_length(&h, 4));
    }

    #[test]
    fn guards() {
        let (g, w) = interval_sail(InfiniteWordSpec::Arithmetic, 8);
        assert!(matches!(sail_girth_surgery(&g, &w, 4), Err(Error::Precondition(_))));
        assert!(matches!(sail_girth_surgery(&g, &w, 3), Err(Error::Precondition(_))));
        let plain = g.clone().with_family(None);
        let (g9, w9) = interval_sail(InfiniteWordSpec::Arithmetic, 9);
        assert!(sail_girth_surgery(&g9, &w9, 4).is_ok());
        assert!(matches!(sail_girth_surgery(&plain, &w, 2), Err(Error::Precondition(_))));
    }
}
