use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphs::{LabeledGraph, Tag};
use crate::words::{InfiniteWordSpec, Letter};

use super::TdBuilder;

/// Maximal run of non-core vertices of degree at most 2. `b` is `None` for a
/// run that dead-ends; `b == Some(a)` for a run that returns to `a`.
pub(super) struct Chain {
    a: usize,
    b: Option<usize>,
    interior: Vec<usize>,
}

/// A path-star graph with its non-core vertices contracted away. Core
/// vertices are stars and the path vertices whose letter has a star; the
/// rest (other path vertices, subdivision vertices) only lengthen edges.
pub(super) struct Reduced {
    /// Star indices sorted by letter.
    pub stars: Vec<(Letter, usize)>,
    /// Core path vertices of each reduced path component, by position.
    pub strands: Vec<Vec<usize>>,
    /// Letter of each core path vertex (0 elsewhere).
    pub letter: Vec<Letter>,
    chains: Vec<Chain>,
    loose: Vec<Vec<usize>>,
}

impl Reduced {
    pub fn has_chains(&self) -> bool {
        !self.chains.is_empty() || !self.loose.is_empty()
    }
}

pub(super) fn reduce(g: &LabeledGraph, spec: &InfiniteWordSpec) -> Result<Reduced> {
    let n = g.vertex_count();
    let star_letters: BTreeSet<Letter> = g.stars().into_iter().map(|(l, _)| l).collect();
    let mut core = vec![false; n];
    let mut letter = vec![0; n];
    let mut pos = vec![0; n];
    for i in 0..n {
        match g.tag_at(i) {
            Tag::Star { .. } => core[i] = true,
            Tag::Path { pos: p } => {
                let l = spec.letter_at(p)?;
                pos[i] = p;
                if star_letters.contains(&l) {
                    core[i] = true;
                    letter[i] = l;
                }
            }
            Tag::Subdivision => {}
            Tag::Plain => {
                return Err(Error::invalid(format!("vertex {} is untagged", g.id_at(i))));
            }
        }
        if !core[i] && g.adj_at(i).len() > 2 {
            return Err(Error::invalid(format!(
                "vertex {} has degree {} but is neither a star nor a starred path vertex",
                g.id_at(i),
                g.adj_at(i).len()
            )));
        }
    }

    let mut radj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut visited = vec![false; n];
    let mut chains = Vec::new();
    for a in 0..n {
        if !core[a] {
            continue;
        }
        for &u in g.adj_at(a) {
            if core[u] {
                radj[a].insert(u);
                continue;
            }
            if visited[u] {
                continue;
            }
            let (mut prev, mut cur) = (a, u);
            let mut interior = Vec::new();
            let b = loop {
                if core[cur] {
                    break Some(cur);
                }
                visited[cur] = true;
                interior.push(cur);
                match g.adj_at(cur) {
                    [_] => break None,
                    &[x, y] => {
                        let next = if x == prev { y } else { x };
                        prev = cur;
                        cur = next;
                    }
                    _ => unreachable!("degree checked above"),
                }
            };
            if let Some(b) = b {
                if b != a {
                    radj[a].insert(b);
                    radj[b].insert(a);
                }
            }
            chains.push(Chain { a, b, interior });
        }
    }
    let mut loose = Vec::new();
    for start in 0..n {
        if core[start] || visited[start] {
            continue;
        }
        loose.push(walk_loose(g, start, &mut visited));
    }

    let star_index = |l: Letter| g.star_of(l).and_then(|id| g.index_of(id));
    let mut stars: Vec<(Letter, usize)> = g
        .stars()
        .into_iter()
        .map(|(l, id)| (l, g.index_of(id).expect("present")))
        .collect();
    stars.sort_unstable();
    let not_family = |msg: String| Error::invalid(format!("not a path-star graph of {spec}: {msg}"));
    for &(l, s) in &stars {
        for &w in &radj[s] {
            if !g.tag_at(w).is_path() || letter[w] != l {
                return Err(not_family(format!("star {} sees vertex {}", g.id_at(s), g.id_at(w))));
            }
        }
    }
    let mut strands = Vec::new();
    let mut seen = vec![false; n];
    for v in 0..n {
        if !core[v] || !g.tag_at(v).is_path() {
            continue;
        }
        let own = star_index(letter[v]).expect("core path vertices have a star");
        let star_nbrs: Vec<usize> = radj[v].iter().copied().filter(|&w| g.tag_at(w).is_star()).collect();
        if star_nbrs != [own] {
            return Err(not_family(format!("path vertex {} is not joined to exactly its own star", g.id_at(v))));
        }
        if seen[v] {
            continue;
        }
        let path_nbrs = |x: usize| radj[x].iter().copied().filter(|&w| g.tag_at(w).is_path()).collect::<Vec<_>>();
        let comp = collect(v, &path_nbrs);
        let degree_sum: usize = comp.iter().map(|&x| path_nbrs(x).len()).sum();
        if comp.iter().any(|&x| path_nbrs(x).len() > 2) || degree_sum != 2 * (comp.len() - 1) {
            return Err(not_family("path vertices do not form disjoint paths".into()));
        }
        let end = comp.iter().copied().find(|&x| path_nbrs(x).len() <= 1).expect("paths have ends");
        let mut strand = vec![end];
        let mut prev = usize::MAX;
        let mut cur = end;
        while let Some(w) = path_nbrs(cur).into_iter().find(|&w| w != prev) {
            strand.push(w);
            prev = cur;
            cur = w;
        }
        for &x in &strand {
            seen[x] = true;
        }
        if strand.len() > 1 && pos[strand[0]] > pos[strand[1]] {
            strand.reverse();
        }
        if strand.windows(2).any(|p| pos[p[0]] >= pos[p[1]]) {
            return Err(not_family("positions do not increase along a path component".into()));
        }
        strands.push(strand);
    }
    strands.sort_by_key(|s| pos[s[0]]);
    Ok(Reduced {
        stars,
        strands,
        letter,
        chains,
        loose,
    })
}

// Component of `start` under `nbrs`, in discovery order.
fn collect(start: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let mut seen = BTreeSet::from([start]);
    let mut i = 0;
    while i < out.len() {
        for w in nbrs(out[i]) {
            if seen.insert(w) {
                out.push(w);
            }
        }
        i += 1;
    }
    out
}

// Vertices of a component of maximum degree 2, in walk order.
fn walk_loose(g: &LabeledGraph, start: usize, visited: &mut [bool]) -> Vec<usize> {
    let comp = collect(start, |x| g.adj_at(x).to_vec());
    let first = comp.iter().copied().find(|&x| g.adj_at(x).len() <= 1).unwrap_or(start);
    let mut out = vec![first];
    visited[first] = true;
    let mut cur = first;
    while let Some(&w) = g.adj_at(cur).iter().find(|&&w| !visited[w]) {
        visited[w] = true;
        out.push(w);
        cur = w;
    }
    out
}

/// Adds bags for every contracted vertex. Each chain hangs off a bag that
/// holds both of its ends, so the added width is at most 2.
pub(super) fn expand(td: &mut TdBuilder, red: &Reduced, g: &LabeledGraph) -> Result<()> {
    for chain in &red.chains {
        let anchor = match chain.b {
            Some(b) => td.find(&[chain.a, b]),
            None => td.find(&[chain.a]),
        }
        .ok_or_else(|| Error::Construction(format!("no bag holds the ends of a chain at {}", g.id_at(chain.a))))?;
        let far = chain.b;
        let mut prev_node = anchor;
        let mut prev_vertex = chain.a;
        for &c in &chain.interior {
            let mut bag = vec![prev_vertex, c];
            bag.extend(far);
            let node = td.add(bag);
            td.link(prev_node, node);
            prev_node = node;
            prev_vertex = c;
        }
    }
    for comp in &red.loose {
        let closed = comp.len() > 2 && g.has_edge_at(comp[0], comp[comp.len() - 1]);
        let mut prev_node = if td.len() > 0 { Some(0) } else { None };
        if comp.len() == 1 {
            let node = td.add([comp[0]]);
            if let Some(p) = prev_node {
                td.link(p, node);
            }
            continue;
        }
        for pair in comp.windows(2) {
            let mut bag = vec![pair[0], pair[1]];
            if closed {
                bag.push(comp[0]);
            }
            let node = td.add(bag);
            if let Some(p) = prev_node {
                td.link(p, node);
            }
            prev_node = Some(node);
        }
    }
    Ok(())
}
