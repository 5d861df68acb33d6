use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{LabeledGraph, VertexId};

/// Pattern vertices sent to host vertices and pattern edges sent to host
/// paths, each path listed from the image of its lower pattern endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionEmbedding {
    pub branch: BTreeMap<VertexId, VertexId>,
    pub paths: BTreeMap<(VertexId, VertexId), Vec<VertexId>>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    branch: BTreeMap<VertexId, VertexId>,
    paths: BTreeMap<String, Vec<VertexId>>,
}

impl Serialize for SubdivisionEmbedding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EmbeddingJson {
            branch: self.branch.clone(),
            paths: self.paths.iter().map(|(&(u, v), p)| (format!("{u}-{v}"), p.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubdivisionEmbedding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = EmbeddingJson::deserialize(d)?;
        let mut paths = BTreeMap::new();
        for (key, path) in raw.paths {
            let (u, v) = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad edge key {key:?}")))?;
            paths.insert((u, v), path);
        }
        Ok(SubdivisionEmbedding { branch: raw.branch, paths })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum EmbeddingDefect {
    /// A pattern vertex has no image.
    Unmapped { vertex: VertexId },
    /// Two pattern vertices share an image.
    Collision { a: VertexId, b: VertexId },
    /// A pattern edge has no path, or a path belongs to no pattern edge.
    PathSet { u: VertexId, v: VertexId },
    /// The path does not run between the images of the edge's ends.
    Ends { u: VertexId, v: VertexId },
    /// Consecutive path vertices are not adjacent, or a vertex repeats.
    Broken { u: VertexId, v: VertexId },
    /// A host vertex is used twice, or a path passes through an image.
    Shared { vertex: VertexId },
}

impl fmt::Display for EmbeddingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingDefect::Unmapped { vertex } => write!(f, "pattern vertex {vertex} is not mapped"),
            EmbeddingDefect::Collision { a, b } => write!(f, "pattern vertices {a} and {b} share an image"),
            EmbeddingDefect::PathSet { u, v } => write!(f, "paths and pattern edges disagree at {u}-{v}"),
            EmbeddingDefect::Ends { u, v } => write!(f, "path for {u}-{v} has the wrong ends"),
            EmbeddingDefect::Broken { u, v } => write!(f, "path for {u}-{v} is not a path of the host"),
            EmbeddingDefect::Shared { vertex } => write!(f, "host vertex {vertex} is used twice"),
        }
    }
}

/// Checks an embedding from scratch. Unknown host vertices are an error.
pub fn validate_embedding(
    host: &LabeledGraph,
    pattern: &LabeledGraph,
    emb: &SubdivisionEmbedding,
) -> Result<Option<EmbeddingDefect>> {
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &p in pattern.ids() {
        let Some(&h) = emb.branch.get(&p) else {
            return Ok(Some(EmbeddingDefect::Unmapped { vertex: p }));
        };
        host.require(h)?;
        if let Some(&q) = owner.get(&h) {
            return Ok(Some(EmbeddingDefect::Collision { a: q, b: p }));
        }
        owner.insert(h, p);
    }
    let edges = pattern.edges();
    if let Some(&(u, v)) = emb.paths.keys().find(|k| !pattern.has_edge(k.0, k.1) || k.0 > k.1) {
        return Ok(Some(EmbeddingDefect::PathSet { u, v }));
    }
    let mut used: HashSet<VertexId> = emb.branch.values().copied().collect();
    for (u, v) in edges {
        let Some(path) = emb.paths.get(&(u, v)) else {
            return Ok(Some(EmbeddingDefect::PathSet { u, v }));
        };
        if path.len() < 2 || path[0] != emb.branch[&u] || path[path.len() - 1] != emb.branch[&v] {
            return Ok(Some(EmbeddingDefect::Ends { u, v }));
        }
        for w in path {
            host.require(*w)?;
        }
        if path.windows(2).any(|p| !host.has_edge(p[0], p[1])) {
            return Ok(Some(EmbeddingDefect::Broken { u, v }));
        }
        for &w in &path[1..path.len() - 1] {
            if !used.insert(w) {
                return Ok(Some(EmbeddingDefect::Shared { vertex: w }));
            }
        }
    }
    Ok(None)
}

// A maximal pattern path through degree-2 vertices between core vertices.
struct CoreEdge {
    a: usize,
    b: usize,
    chain: Vec<usize>,
}

/// Finds a subdivision of `pattern` in `host`, or proves there is none.
///
/// Degree-2 pattern vertices are suppressed first, so the search maps the
/// remaining core vertices and routes one host path per chain, trying paths
/// in order of length. Branch images need enough degree, and every mapped
/// vertex must keep enough free neighbours for its unrouted chains.
pub fn contains_subdivision(
    host: &LabeledGraph,
    pattern: &LabeledGraph,
    caps: &Caps,
) -> Result<Option<SubdivisionEmbedding>> {
    if host.vertex_count() > caps.subdivision_host_vertices {
        return Err(Error::limit(
            "subdivision host vertices",
            host.vertex_count(),
            caps.subdivision_host_vertices,
        ));
    }
    if !counts_allow(host, pattern) {
        return Ok(None);
    }
    let (core, edges) = suppress(pattern);
    let order = edge_order(pattern, &core, &edges);
    let pdeg: Vec<usize> = (0..pattern.vertex_count())
        .map(|p| edges.iter().filter(|e| e.a == p).count() + edges.iter().filter(|e| e.b == p).count())
        .collect();
    let mut search = Search {
        host,
        edges: &edges,
        order: &order,
        pdeg,
        twin: twin_classes(pattern.vertex_count(), &core, &edges),
        image: vec![None; pattern.vertex_count()],
        used: vec![false; host.vertex_count()],
        direct: HashSet::new(),
        routes: vec![Vec::new(); edges.len()],
        isolated: core.iter().copied().filter(|&p| pattern.adj_at(p).is_empty()).collect(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let mut emb = SubdivisionEmbedding {
        branch: BTreeMap::new(),
        paths: BTreeMap::new(),
    };
    for (p, img) in search.image.iter().enumerate() {
        if let Some(h) = img {
            emb.branch.insert(pattern.id_at(p), host.id_at(*h));
        }
    }
    for (e, route) in edges.iter().zip(&search.routes) {
        // pattern vertices along the chain, host vertices along the route
        let mut stops = vec![e.a];
        stops.extend(&e.chain);
        stops.push(e.b);
        for (k, &p) in e.chain.iter().enumerate() {
            emb.branch.insert(pattern.id_at(p), host.id_at(route[k + 1]));
        }
        for k in 0..stops.len() - 1 {
            let from = k;
            let to = if k + 2 == stops.len() { route.len() - 1 } else { k + 1 };
            let mut seg: Vec<VertexId> = route[from..=to].iter().map(|&h| host.id_at(h)).collect();
            let (x, y) = (pattern.id_at(stops[k]), pattern.id_at(stops[k + 1]));
            if x > y {
                seg.reverse();
            }
            emb.paths.insert((x.min(y), x.max(y)), seg);
        }
    }
    debug_assert_eq!(validate_embedding(host, pattern, &emb).ok().flatten(), None);
    Ok(Some(emb))
}

// Necessary counting conditions: enough vertices, edges and high-degree
// vertices.
fn counts_allow(host: &LabeledGraph, pattern: &LabeledGraph) -> bool {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let degrees = |g: &LabeledGraph| {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|i| g.adj_at(i).len()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    };
    let (hd, pd) = (degrees(host), degrees(pattern));
    pd.iter().zip(&hd).all(|(p, h)| p <= h)
}

// Core vertices (degree other than 2, plus one per all-degree-2 cycle) and
// the chains joining them.
fn suppress(pattern: &LabeledGraph) -> (Vec<usize>, Vec<CoreEdge>) {
    let n = pattern.vertex_count();
    let mut is_core: Vec<bool> = (0..n).map(|p| pattern.adj_at(p).len() != 2).collect();
    let mut seen_edge: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for a in 0..n {
        if is_core[a] {
            for &u in pattern.adj_at(a) {
                walk(pattern, a, u, &is_core, &mut seen_edge, &mut edges);
            }
        }
    }
    // cycles made only of degree-2 vertices
    for a in 0..n {
        if !is_core[a] && !pattern.adj_at(a).iter().any(|&u| seen_edge.contains(&(a.min(u), a.max(u)))) {
            is_core[a] = true;
            let first = pattern.adj_at(a)[0];
            walk(pattern, a, first, &is_core, &mut seen_edge, &mut edges);
        }
    }
    let core = (0..n).filter(|&p| is_core[p]).collect();
    (core, edges)
}

fn walk(
    pattern: &LabeledGraph,
    a: usize,
    first: usize,
    is_core: &[bool],
    seen_edge: &mut HashSet<(usize, usize)>,
    edges: &mut Vec<CoreEdge>,
) {
    if !seen_edge.insert((a.min(first), a.max(first))) {
        return;
    }
    let (mut prev, mut cur) = (a, first);
    let mut chain = Vec::new();
    while !is_core[cur] {
        chain.push(cur);
        let adj = pattern.adj_at(cur);
        let next = if adj[0] == prev { adj[1] } else { adj[0] };
        prev = cur;
        cur = next;
        seen_edge.insert((prev.min(cur), prev.max(cur)));
    }
    edges.push(CoreEdge { a, b: cur, chain });
}

// Chains in breadth-first order from the highest-degree core vertex of
// each component, so most chains start at an already mapped vertex.
fn edge_order(pattern: &LabeledGraph, core: &[usize], edges: &[CoreEdge]) -> Vec<usize> {
    let mut order = Vec::new();
    let mut done = vec![false; edges.len()];
    let mut reached = vec![false; pattern.vertex_count()];
    let mut starts: Vec<usize> = core.to_vec();
    starts.sort_by_key(|&p| (std::cmp::Reverse(pattern.adj_at(p).len()), p));
    for s in starts {
        if reached[s] {
            continue;
        }
        reached[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(p) = queue.pop_front() {
            for (k, e) in edges.iter().enumerate() {
                if done[k] || (e.a != p && e.b != p) {
                    continue;
                }
                done[k] = true;
                order.push(k);
                let other = if e.a == p { e.b } else { e.a };
                if !reached[other] {
                    reached[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    order
}

// Core vertices whose exchange is an automorphism of the suppressed
// pattern: same chain lengths to every other core vertex and same loops.
fn twin_classes(n: usize, core: &[usize], edges: &[CoreEdge]) -> Vec<usize> {
    let mut class: Vec<usize> = (0..n).collect();
    let lengths = |a: usize, c: usize| {
        let mut l: Vec<usize> = edges
            .iter()
            .filter(|e| (e.a == a && e.b == c) || (e.a == c && e.b == a))
            .map(|e| e.chain.len())
            .collect();
        l.sort_unstable();
        l
    };
    for (k, &a) in core.iter().enumerate() {
        for &b in &core[..k] {
            if class[b] != b {
                continue;
            }
            let same = lengths(a, a) == lengths(b, b)
                && core.iter().all(|&c| c == a || c == b || lengths(a, c) == lengths(b, c));
            if same {
                class[a] = b;
                break;
            }
        }
    }
    class
}

struct Search<'a> {
    host: &'a LabeledGraph,
    edges: &'a [CoreEdge],
    order: &'a [usize],
    pdeg: Vec<usize>,
    twin: Vec<usize>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    direct: HashSet<(usize, usize)>,
    routes: Vec<Vec<usize>>,
    isolated: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return self.place_isolated(0);
        }
        let e = &self.edges[self.order[step]];
        let (a, b) = (e.a, e.b);
        match (self.image[a], self.image[b]) {
            (None, None) => {
                for h in 0..self.host.vertex_count() {
                    if !self.can_map(a, h) {
                        continue;
                    }
                    self.image[a] = Some(h);
                    self.used[h] = true;
                    if self.run(step) {
                        return true;
                    }
                    self.used[h] = false;
                    self.image[a] = None;
                }
                false
            }
            (Some(_), _) => self.route(step, a, b, false),
            (None, Some(_)) => self.route(step, b, a, true),
        }
    }

    // Free, of enough degree, and ordered against mapped twins.
    fn can_map(&self, p: usize, h: usize) -> bool {
        if self.used[h] || self.host.adj_at(h).len() < self.pdeg[p] {
            return false;
        }
        self.image.iter().enumerate().all(|(q, img)| match img {
            Some(g) if self.twin[q] == self.twin[p] => (q < p) == (*g < h),
            _ => true,
        })
    }

    fn place_isolated(&mut self, k: usize) -> bool {
        let Some(&p) = self.isolated.get(k) else {
            return true;
        };
        for h in 0..self.host.vertex_count() {
            if self.can_map(p, h) {
                self.used[h] = true;
                self.image[p] = Some(h);
                if self.place_isolated(k + 1) {
                    return true;
                }
                self.image[p] = None;
                self.used[h] = false;
            }
        }
        false
    }

    // Routes chain `step` from the image of `from`; `to` may be unmapped.
    fn route(&mut self, step: usize, from: usize, to: usize, reversed: bool) -> bool {
        let k = self.order[step];
        let min_len = (self.edges[k].chain.len() + 1).max(if from == to { 3 } else { 1 });
        let start = self.image[from].expect("mapped");
        // free vertices that can still reach the target; none means any
        let dist = self.image[to].map(|target| self.free_distances(target));
        let mut path = vec![start];
        self.extend(step, &mut path, min_len, to, reversed, dist.as_deref())
    }

    // Distances from `target` through unused vertices.
    fn free_distances(&self, target: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.host.vertex_count()];
        dist[target] = 0;
        let mut queue = std::collections::VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            for &w in self.host.adj_at(v) {
                if !self.used[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn extend(
        &mut self,
        step: usize,
        path: &mut Vec<usize>,
        min_len: usize,
        to: usize,
        reversed: bool,
        dist: Option<&[usize]>,
    ) -> bool {
        let cur = *path.last().expect("nonempty");
        let mut next: Vec<usize> = self.host.adj_at(cur).to_vec();
        if let Some(d) = dist {
            next.retain(|&w| d[w] != usize::MAX);
            next.sort_by_key(|&w| d[w]);
        }
        let long_enough = path.len() >= min_len;
        for w in next {
            let ends_here = long_enough
                && match self.image[to] {
                    Some(target) => w == target && (path.len() > 1 || !self.direct.contains(&(cur.min(w), cur.max(w)))),
                    None => self.can_map(to, w),
                };
            if ends_here && self.commit(step, path, to, w, reversed) {
                return true;
            }
            if self.used[w] {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            let found = self.extend(step, path, min_len, to, reversed, dist);
            path.pop();
            self.used[w] = false;
            if found {
                return true;
            }
        }
        false
    }

    // Fixes the route ending at `w` and continues with the next chain.
    fn commit(&mut self, step: usize, path: &mut Vec<usize>, to: usize, w: usize, reversed: bool) -> bool {
        let cur = *path.last().expect("nonempty");
        let fresh = self.image[to].is_none();
        if fresh {
            self.image[to] = Some(w);
            self.used[w] = true;
        }
        let single = path.len() == 1;
        if single {
            self.direct.insert((cur.min(w), cur.max(w)));
        }
        path.push(w);
        let k = self.order[step];
        let mut route = path.clone();
        if reversed {
            route.reverse();
        }
        self.routes[k] = route;
        if self.feasible() && self.run(step + 1) {
            return true;
        }
        self.routes[k].clear();
        path.pop();
        if single {
            self.direct.remove(&(cur.min(w), cur.max(w)));
        }
        if fresh {
            self.image[to] = None;
            self.used[w] = false;
        }
        false
    }

    // Every mapped core vertex keeps as many open neighbours as it has
    // chains left, and the ends of every pending chain are still joined
    // through unused vertices.
    fn feasible(&self) -> bool {
        let pending = |k: usize| self.routes[k].is_empty();
        for (p, img) in self.image.iter().enumerate() {
            let Some(h) = *img else { continue };
            let need = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(k, e)| pending(k) && (e.a == p || e.b == p))
                .map(|(_, e)| if e.a == e.b { 2 } else { 1 })
                .sum::<usize>();
            if need == 0 {
                continue;
            }
            let open = self.host.adj_at(h).iter().filter(|&&w| !self.used[w] || self.image.contains(&Some(w))).count();
            if open < need {
                return false;
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            if !pending(k) || e.a == e.b {
                continue;
            }
            let (Some(x), Some(y)) = (self.image[e.a], self.image[e.b]) else { continue };
            let d = self.free_distances(y);
            let joined = self.host.adj_at(x).iter().any(|&w| {
                (w == y && e.chain.is_empty() && !self.direct.contains(&(x.min(y), x.max(y)))) || (w != y && d[w] != usize::MAX)
            });
            if !joined {
                return false;
            }
        }
        true
    }
}
