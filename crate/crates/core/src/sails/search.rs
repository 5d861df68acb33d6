use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{components, remove_vertices, LabeledGraph, SailWitness};

use super::star_ids;

// A non-star component laid out as a path, with the stars each vertex sees.
struct Strand {
    order: Vec<usize>,
    seen: Vec<u64>,
}

/// Exhaustive search for a `t`-sail whose stars are star-tagged vertices and
/// whose paths are segments of the components left after deleting all stars.
///
/// Ordered star tuples are tried in lexicographic id order, so the first
/// witness returned is the least one in that order. Those components must be
/// paths; for `t >= 3` the host size is capped by
/// [`Caps::sail_search_vertices`].
pub fn find_sail_witness(g: &LabeledGraph, t: usize, caps: &Caps) -> Result<Option<SailWitness>> {
    if t == 0 {
        return Err(Error::invalid("sail order must be at least 1"));
    }
    if t >= 3 && g.vertex_count() > caps.sail_search_vertices {
        return Err(Error::limit("sail search vertices", g.vertex_count(), caps.sail_search_vertices));
    }
    let stars = star_ids(g);
    if stars.len() > 64 {
        return Err(Error::limit("sail search stars", stars.len(), 64));
    }
    if stars.len() < t {
        return Ok(None);
    }
    let star_index: Vec<Option<usize>> = (0..g.vertex_count())
        .map(|i| stars.iter().position(|&s| s == g.id_at(i)))
        .collect();

    let skeleton = remove_vertices(g, &stars)?;
    let mut strands = Vec::new();
    for comp in components(&skeleton) {
        let order = path_order(&skeleton, &comp)?;
        let order: Vec<usize> = order.into_iter().map(|v| g.index_of(v).expect("present")).collect();
        let seen = order
            .iter()
            .map(|&i| {
                g.adj_at(i)
                    .iter()
                    .filter_map(|&j| star_index[j])
                    .fold(0u64, |acc, s| acc | (1 << s))
            })
            .collect();
        strands.push(Strand { order, seen });
    }
    let reach: u64 = strands.iter().flat_map(|s| s.seen.iter()).fold(0, |a, &b| a | b);

    let mut tuple = Vec::with_capacity(t);
    let mut used = vec![false; stars.len()];
    let mut found = None;
    choose_stars(&strands, reach, t, &mut tuple, &mut used, &mut found);
    Ok(found.map(|(tuple, segs)| SailWitness {
        stars: tuple.iter().map(|&s| stars[s]).collect(),
        paths: segs
            .iter()
            .map(|&(c, a, b)| strands[c].order[a..=b].iter().map(|&i| g.id_at(i)).collect())
            .collect(),
        subdivided: false,
    }))
}

type Segment = (usize, usize, usize);

fn choose_stars(
    strands: &[Strand],
    reach: u64,
    t: usize,
    tuple: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Option<(Vec<usize>, Vec<Segment>)>,
) {
    if found.is_some() {
        return;
    }
    if tuple.len() == t {
        let mut segs = vec![(0, 0, 0); t];
        let mut taken: Vec<Vec<(usize, usize)>> = vec![Vec::new(); strands.len()];
        if assign(strands, tuple, t, &mut segs, &mut taken) {
            *found = Some((tuple.clone(), segs));
        }
        return;
    }
    for s in 0..used.len() {
        if used[s] || reach & (1 << s) == 0 {
            continue;
        }
        used[s] = true;
        tuple.push(s);
        choose_stars(strands, reach, t, tuple, used, found);
        tuple.pop();
        used[s] = false;
        if found.is_some() {
            return;
        }
    }
}

// Places paths t, t-1, .., 1; path k must see the first k stars of the tuple.
// Inclusion-minimal segments suffice since shrinking keeps disjointness.
fn assign(
    strands: &[Strand],
    tuple: &[usize],
    k: usize,
    segs: &mut [Segment],
    taken: &mut [Vec<(usize, usize)>],
) -> bool {
    if k == 0 {
        return true;
    }
    let need = tuple[..k].iter().fold(0u64, |acc, &s| acc | (1 << s));
    for (c, strand) in strands.iter().enumerate() {
        for (a, b) in minimal_windows(strand, need) {
            if taken[c].iter().any(|&(x, y)| a <= y && x <= b) {
                continue;
            }
            taken[c].push((a, b));
            segs[k - 1] = (c, a, b);
            if assign(strands, tuple, k - 1, segs, taken) {
                return true;
            }
            taken[c].pop();
        }
    }
    false
}

fn minimal_windows(strand: &Strand, need: u64) -> Vec<(usize, usize)> {
    let len = strand.order.len();
    // end[a] = least b with seen[a..=b] covering need
    let mut end = vec![usize::MAX; len + 1];
    for a in 0..len {
        let mut have = 0u64;
        for b in a..len {
            have |= strand.seen[b] & need;
            if have == need {
                end[a] = b;
                break;
            }
        }
    }
    (0..len)
        .filter(|&a| end[a] != usize::MAX && end[a + 1] > end[a])
        .map(|a| (a, end[a]))
        .collect()
}

// Vertices of a path component from one end to the other.
fn path_order(skeleton: &LabeledGraph, comp: &[usize]) -> Result<Vec<usize>> {
    let not_path = || Error::invalid("sail search needs the non-star vertices to form disjoint paths");
    if comp.len() == 1 {
        return Ok(comp.to_vec());
    }
    let start = comp
        .iter()
        .copied()
        .find(|&v| skeleton.degree(v) == 1)
        .ok_or_else(not_path)?;
    if comp.iter().any(|&v| skeleton.degree(v) > 2) {
        return Err(not_path());
    }
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(next) = skeleton.neighbors(cur).find(|&w| Some(w) != prev) {
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    if order.len() != comp.len() {
        return Err(not_path());
    }
    Ok(order)
}
