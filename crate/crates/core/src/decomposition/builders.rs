use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Obstruction, Result};
use crate::graphs::{LabeledGraph, SailWitness, VertexId};
use crate::words::{InfiniteWordSpec, Letter};

use super::reduce::{expand, reduce, Reduced};
use super::{TdBuilder, TreeDecomposition};

pub fn nu_bound(t: usize) -> usize {
    t * t + 2 * t - 1
}

pub fn kappa_bound(q: u32, t: usize) -> usize {
    (t + 1) * (q as usize - 1) + 2
}

pub fn eta_bound(t: usize) -> usize {
    t + 6
}

fn check_family(g: &LabeledGraph, want: &InfiniteWordSpec) -> Result<()> {
    match g.family() {
        Some(f) if f == want => Ok(()),
        Some(f) => Err(Error::invalid(format!("graph belongs to {f}, expected {want}"))),
        None => Err(Error::invalid(format!("graph carries no word family, expected {want}"))),
    }
}

fn check_order(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::invalid(format!("sail order must be at least 2, got {t}")));
    }
    Ok(())
}

fn empty(g: &LabeledGraph) -> Option<TreeDecomposition> {
    (g.vertex_count() == 0).then(|| TreeDecomposition::single_bag([]))
}

/// Trunk-and-branches decomposition for the arithmetic family.
///
/// With stars `x_1 < .. < x_m`, trunk bag `i` (for `i = 1..=m-t+1`) holds the
/// stars `x_i..x_{i+t-1}`, every run of `t` consecutive core path vertices
/// reading `x_i..x_{i+t-1}`, the base stars `x_1..x_{t-1}` and every path
/// vertex directly preceding a run `x_1..x_t`. Remaining path segments hang
/// off the lowest trunk bag holding their stars and neighbours. A trunk bag
/// that would receive `t` runs yields an obstruction with the sail they form.
pub fn build_nu(g: &LabeledGraph, t: usize) -> Result<TreeDecomposition> {
    let spec = InfiniteWordSpec::Arithmetic;
    check_family(g, &spec)?;
    check_order(t)?;
    if let Some(td) = empty(g) {
        return Ok(td);
    }
    let red = reduce(g, &spec)?;
    let m = red.stars.len();
    let rank = star_ranks(&red);
    let star_at = |k: usize| red.stars[k - 1].1;

    let mut td = TdBuilder::default();
    let trunk: Vec<usize> = if m >= t {
        (1..=m - t + 1)
            .map(|i| {
                let mut bag: BTreeSet<usize> = (i..i + t).map(star_at).collect();
                bag.extend((1..t).map(star_at));
                td.add(bag)
            })
            .collect()
    } else {
        vec![td.add((1..=m).map(star_at))]
    };
    for pair in trunk.windows(2) {
        td.link(pair[0], pair[1]);
    }

    let mut covered = vec![false; g.vertex_count()];
    if m >= t {
        let (runs, pre) = trunk_runs(&red, t);
        for (i, found) in runs.iter().enumerate().skip(1) {
            if found.len() >= t {
                return Err(run_obstruction(g, &red, i, t, found));
            }
            for run in found {
                td.bag_mut(trunk[i - 1]).extend(run.iter().copied());
                for &v in run.iter() {
                    covered[v] = true;
                }
            }
        }
        for &v in &pre {
            covered[v] = true;
            for &node in &trunk {
                td.bag_mut(node).insert(v);
            }
        }
    }

    for strand in &red.strands {
        let mut l = 0;
        while l < strand.len() {
            if covered[strand[l]] {
                l += 1;
                continue;
            }
            let mut r = l;
            while r + 1 < strand.len() && !covered[strand[r + 1]] {
                r += 1;
            }
            let mut need: BTreeSet<usize> = strand[l..=r]
                .iter()
                .map(|&v| star_at(rank[&red.letter[v]]))
                .collect();
            if l > 0 {
                need.insert(strand[l - 1]);
            }
            if r + 1 < strand.len() {
                need.insert(strand[r + 1]);
            }
            let anchor = trunk[widen_trunk(&mut td, &trunk, &need)];
            hang_segment(&mut td, anchor, &need, &strand[l..=r]);
            l = r + 1;
        }
    }
    expand(&mut td, &red, g)?;
    Ok(td.finish(g))
}

fn star_ranks(red: &Reduced) -> BTreeMap<Letter, usize> {
    red.stars.iter().enumerate().map(|(k, &(l, _))| (l, k + 1)).collect()
}

// For each trunk index `i` (1-based), the runs of `t` core path vertices
// whose star ranks are `i..i+t`; also the vertices just before a run at 1.
fn trunk_runs(red: &Reduced, t: usize) -> (Vec<Vec<&[usize]>>, Vec<usize>) {
    let rank = star_ranks(red);
    let m = red.stars.len();
    let mut runs: Vec<Vec<&[usize]>> = vec![Vec::new(); m.saturating_sub(t) + 2];
    let mut pre = Vec::new();
    for strand in &red.strands {
        let ranks: Vec<usize> = strand.iter().map(|&v| rank[&red.letter[v]]).collect();
        for l in 0..strand.len().saturating_sub(t - 1) {
            if (1..t).all(|r| ranks[l + r] == ranks[l] + r) {
                let i = ranks[l];
                runs[i].push(&strand[l..l + t]);
                if i == 1 && l > 0 {
                    pre.push(strand[l - 1]);
                }
            }
        }
    }
    (runs, pre)
}

/// One block of the arithmetic trunk: `t` consecutive stars and every path
/// factor reading their letters in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuBlock {
    pub stars: Vec<VertexId>,
    pub runs: Vec<Vec<VertexId>>,
}

/// The trunk blocks [`build_nu`] starts from, without the obstruction check.
pub fn nu_blocks(g: &LabeledGraph, t: usize) -> Result<Vec<NuBlock>> {
    let spec = InfiniteWordSpec::Arithmetic;
    check_family(g, &spec)?;
    check_order(t)?;
    let red = reduce(g, &spec)?;
    let m = red.stars.len();
    if m < t {
        return Ok(Vec::new());
    }
    let (runs, _) = trunk_runs(&red, t);
    Ok((1..=m - t + 1)
        .map(|i| NuBlock {
            stars: (i..i + t).map(|k| g.id_at(red.stars[k - 1].1)).collect(),
            runs: runs[i].iter().map(|run| run.iter().map(|&v| g.id_at(v)).collect()).collect(),
        })
        .collect())
}

// Position in the trunk of the lowest bag holding `need`; if none does, the
// bag needing the fewest insertions, after extending each missing vertex's
// contiguous trunk interval up to it.
fn widen_trunk(td: &mut TdBuilder, trunk: &[usize], need: &BTreeSet<usize>) -> usize {
    let spans: Vec<(usize, Option<(usize, usize)>)> = need
        .iter()
        .map(|&v| {
            let hits: Vec<usize> = (0..trunk.len()).filter(|&i| td.bag(trunk[i]).contains(&v)).collect();
            (v, hits.first().map(|&a| (a, *hits.last().expect("nonempty"))))
        })
        .collect();
    let cost = |i: usize| -> usize {
        spans
            .iter()
            .map(|&(_, span)| match span {
                Some((a, _)) if i < a => a - i,
                Some((_, b)) if i > b => i - b,
                Some(_) => 0,
                None => trunk.len(),
            })
            .sum()
    };
    let best = (0..trunk.len()).min_by_key(|&i| cost(i)).expect("trunk is nonempty");
    for &(v, span) in &spans {
        let range = match span {
            Some((a, _)) if best < a => best..a,
            Some((_, b)) if best > b => b + 1..best + 1,
            Some(_) => continue,
            None => best..best + 1,
        };
        for i in range {
            td.bag_mut(trunk[i]).insert(v);
        }
    }
    best
}

// A path of bags over the segment, each holding `need`, hung off `anchor`.
fn hang_segment(td: &mut TdBuilder, anchor: usize, need: &BTreeSet<usize>, segment: &[usize]) {
    let mut prev = anchor;
    let pairs: Vec<&[usize]> = if segment.len() == 1 {
        vec![segment]
    } else {
        segment.windows(2).collect()
    };
    for pair in pairs {
        let mut bag = need.clone();
        bag.extend(pair.iter().copied());
        let node = td.add(bag);
        td.link(prev, node);
        prev = node;
    }
}

fn run_obstruction(g: &LabeledGraph, red: &Reduced, i: usize, t: usize, runs: &[&[usize]]) -> Error {
    let stars: Vec<usize> = (i..i + t).map(|k| g.id_at(red.stars[k - 1].1)).collect();
    let paths: Vec<Vec<usize>> = runs[..t]
        .iter()
        .map(|run| run.iter().map(|&v| g.id_at(v)).collect())
        .collect();
    let witness = SailWitness {
        stars: stars.clone(),
        paths: paths.clone(),
        subdivided: red.has_chains(),
    };
    Error::Obstruction(Box::new(Obstruction {
        reason: format!("{t} disjoint path factors read the same {t} star letters, forming a {t}-sail"),
        component: paths.concat(),
        stars,
        witness: Some(witness),
    }))
}

/// Star-shaped decomposition for the power family `q`: a root bag on the
/// first `(t+1)(q-1)` stars, a child per further star, and a branch path per
/// path component under the child of the one further star it sees.
pub fn build_kappa(g: &LabeledGraph, q: u32, t: usize) -> Result<TreeDecomposition> {
    if q < 2 {
        return Err(Error::invalid(format!("power base must be at least 2, got {q}")));
    }
    check_order(t)?;
    build_star_shaped(g, &InfiniteWordSpec::Power(q), (t + 1) * (q as usize - 1))
}

/// As [`build_kappa`] for the Fibonacci-type family, with `t+4` base stars.
pub fn build_eta(g: &LabeledGraph, t: usize) -> Result<TreeDecomposition> {
    check_order(t)?;
    build_star_shaped(g, &InfiniteWordSpec::FibonacciType, t + 4)
}

fn build_star_shaped(g: &LabeledGraph, spec: &InfiniteWordSpec, base: usize) -> Result<TreeDecomposition> {
    check_family(g, spec)?;
    if let Some(td) = empty(g) {
        return Ok(td);
    }
    let red = reduce(g, spec)?;
    let base = base.min(red.stars.len());
    let root_bag: BTreeSet<usize> = red.stars[..base].iter().map(|&(_, s)| s).collect();
    let extra: BTreeMap<Letter, usize> = red.stars[base..].iter().copied().collect();

    let mut td = TdBuilder::default();
    let root = td.add(root_bag.iter().copied());
    let mut child: BTreeMap<Letter, usize> = BTreeMap::new();
    for (&l, &s) in &extra {
        let mut bag = root_bag.clone();
        bag.insert(s);
        let node = td.add(bag);
        td.link(root, node);
        child.insert(l, node);
    }
    for strand in &red.strands {
        let outside: BTreeSet<Letter> = strand
            .iter()
            .map(|&v| red.letter[v])
            .filter(|l| extra.contains_key(l))
            .collect();
        if outside.len() >= 2 {
            return Err(Error::Obstruction(Box::new(Obstruction {
                reason: format!(
                    "a path component sees {} stars beyond the first {base}, so the graph holds a sail",
                    outside.len()
                ),
                component: strand.iter().map(|&v| g.id_at(v)).collect(),
                stars: outside.iter().map(|l| g.id_at(extra[l])).collect(),
                witness: None,
            })));
        }
        let (anchor, need) = match outside.first() {
            Some(l) => (child[l], td.bag(child[l]).clone()),
            None => (root, root_bag.clone()),
        };
        hang_segment(&mut td, anchor, &need, strand);
    }
    expand(&mut td, &red, g)?;
    Ok(td.finish(g))
}
