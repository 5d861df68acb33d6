use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sailkit::decomposition::{build_eta, build_kappa, build_nu, eta_bound, exact_treewidth, kappa_bound, nu_bound, width};
use sailkit::graphs::{path_star_graph, LabeledGraph};
use sailkit::sails::find_sail_witness;
use sailkit::words::{prefix, InfiniteWordSpec, Letter};
use sailkit::{Caps, Error};
use serde::{Serialize, Serializer};

use crate::{parse_ranges, ExperimentCmd, Failure, Outcome};

/// A computed number, or why it is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Value(usize),
    Cap,
    Obstruction,
    NotApplicable,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Cap => write!(f, "cap"),
            Cell::Obstruction => write!(f, "obstruction"),
            Cell::NotApplicable => write!(f, "n/a"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Value(v) => s.serialize_u64(*v as u64),
            other => s.collect_str(other),
        }
    }
}

impl Cell {
    fn value(self) -> Option<usize> {
        match self {
            Cell::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRow {
    pub family: String,
    pub q: Option<u32>,
    pub t: usize,
    pub positions: String,
    pub stars: String,
    pub n_vertices: usize,
    pub sail_order_found: Cell,
    pub exact_tw: Cell,
    pub builder_width: Cell,
    pub theorem_bound: Cell,
    pub elapsed_ms: Option<u128>,
}

impl ExperimentRow {
    /// `sail - 1 <= exact <= builder <= bound` over the computed cells.
    pub fn chain_holds(&self) -> bool {
        let cells = [
            self.sail_order_found.value().map(|s| s.saturating_sub(1)),
            self.exact_tw.value(),
            self.builder_width.value(),
            self.theorem_bound.value(),
        ];
        let known: Vec<usize> = cells.into_iter().flatten().collect();
        known.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn run(cmd: &ExperimentCmd, caps: &Caps, csv: bool) -> Result<Outcome, Failure> {
    let rows = match cmd {
        ExperimentCmd::Bounds { family, t, prefix: len, stars, timing } => {
            let positions: BTreeSet<usize> = (1..=*len).collect();
            let star_sets: Vec<BTreeSet<Letter>> = match stars {
                Some(text) => vec![parse_ranges(text)?],
                None => {
                    let word = prefix(family, *len, caps)?;
                    let top = word.letters.iter().copied().max().unwrap_or(0).min(8);
                    (1..=top).map(|s| (1..=s).collect()).collect()
                }
            };
            star_sets
                .iter()
                .map(|s| row(family, *t, &positions, s, caps, *timing))
                .collect::<Result<Vec<_>, _>>()?
        }
        ExperimentCmd::Sample { family, t, count, seed, span, max_vertices, timing } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let word = prefix(family, *span, caps)?.letters;
            let mut rows = Vec::new();
            while rows.len() < *count {
                let len = rng.gen_range(1..=(*span).min(12));
                let start = rng.gen_range(1..=span - len + 1);
                let positions: BTreeSet<usize> = (start..start + len).collect();
                let present: BTreeSet<Letter> = positions.iter().map(|&p| word[p - 1]).collect();
                let stars: BTreeSet<Letter> = present.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
                if stars.is_empty() || positions.len() + stars.len() > *max_vertices {
                    continue;
                }
                rows.push(row(family, *t, &positions, &stars, caps, *timing)?);
            }
            rows
        }
    };
    let broken = rows.iter().any(|r| !r.chain_holds());
    let text = if csv {
        let mut out = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            out.serialize(r).map_err(|e| Failure { code: 2, message: e.to_string() })?;
        }
        if rows.is_empty() {
            out.write_record(HEADER).expect("in-memory write");
        }
        String::from_utf8(out.into_inner().expect("in-memory write")).expect("utf-8")
    } else {
        serde_json::to_string(&rows).expect("serializable")
    };
    Ok(Outcome::failed_if(text, broken))
}

const HEADER: [&str; 11] = [
    "family",
    "q",
    "t",
    "positions",
    "stars",
    "n_vertices",
    "sail_order_found",
    "exact_tw",
    "builder_width",
    "theorem_bound",
    "elapsed_ms",
];

// Sorted values written as `a-b` runs.
fn ranges(values: impl IntoIterator<Item = u64>) -> String {
    let mut parts = Vec::new();
    let mut iter = values.into_iter().peekable();
    while let Some(a) = iter.next() {
        let mut b = a;
        while iter.peek() == Some(&(b + 1)) {
            b = iter.next().expect("peeked");
        }
        parts.push(if a == b { a.to_string() } else { format!("{a}-{b}") });
    }
    parts.join(",")
}

fn cap_or<T>(r: sailkit::Result<T>, f: impl FnOnce(T) -> Cell) -> Result<Cell, Failure> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::Limit { .. }) => Ok(Cell::Cap),
        Err(Error::Obstruction(_)) => Ok(Cell::Obstruction),
        Err(e) => Err(e.into()),
    }
}

fn largest_sail(g: &LabeledGraph, caps: &Caps) -> Result<Cell, Failure> {
    let mut best = 0;
    for t in 1..=g.stars().len() {
        match find_sail_witness(g, t, caps) {
            Ok(Some(_)) => best = t,
            Ok(None) => break,
            Err(Error::Limit { .. }) => return Ok(if best == 0 { Cell::Cap } else { Cell::Value(best) }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Cell::Value(best))
}

fn row(
    family: &InfiniteWordSpec,
    t: usize,
    positions: &BTreeSet<usize>,
    stars: &BTreeSet<Letter>,
    caps: &Caps,
    timing: bool,
) -> Result<ExperimentRow, Failure> {
    let start = Instant::now();
    let g = path_star_graph(family, positions, stars, caps)?;
    let (built, bound) = match family {
        InfiniteWordSpec::Arithmetic => (Some(build_nu(&g, t)), Some(nu_bound(t))),
        InfiniteWordSpec::Power(q) => (Some(build_kappa(&g, *q, t)), Some(kappa_bound(*q, t))),
        InfiniteWordSpec::FibonacciType => (Some(build_eta(&g, t)), Some(eta_bound(t))),
        InfiniteWordSpec::ExplicitPeriodic(_) => (None, None),
    };
    let builder_width = match built {
        Some(r) => cap_or(r, |td| Cell::Value(width(&td).expect("builders emit a bag")))?,
        None => Cell::NotApplicable,
    };
    Ok(ExperimentRow {
        family: family.to_string(),
        q: match family {
            InfiniteWordSpec::Power(q) => Some(*q),
            _ => None,
        },
        t,
        positions: ranges(positions.iter().map(|&p| p as u64)),
        stars: ranges(stars.iter().map(|&l| l as u64)),
        n_vertices: g.vertex_count(),
        sail_order_found: largest_sail(&g, caps)?,
        exact_tw: cap_or(exact_treewidth(&g, caps), Cell::Value)?,
        builder_width,
        theorem_bound: bound.map_or(Cell::NotApplicable, Cell::Value),
        elapsed_ms: timing.then(|| start.elapsed().as_millis()),
    })
}
