mod experiment;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sailkit::decomposition::{
    build_eta, build_kappa, build_nu, exact_treewidth, heuristic_treewidth_upper, validate_decomposition, width,
    TreeDecomposition,
};
use sailkit::graphs::{
    canonical_sail, check_sail_witness, complete_bipartite_graph, complete_graph, components, girth,
    graph_from_json, graph_to_dot, graph_to_json, line_graph, path_star_graph, wall, LabeledGraph, SailWitness,
};
use sailkit::obstructions::{contains_subdivision, kkw_scan, separator_check, wall_surgery, PatternStatus};
use sailkit::sails::{
    build_sail_from_intervals, clique_minor_model, find_sail_witness, sail_girth_surgery, validate_minor_model,
};
use sailkit::words::{find_increasing_intervals, is_nested, prefix, InfiniteWordSpec, Letter};
use sailkit::{Caps, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "sailkit", version, about = "Path-star graphs of infinite words, sails and tree decompositions")]
struct Cli {
    /// Cap for the operation being run; overrides SAILKIT_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Letters of an infinite word.
    Word(WordArgs),
    /// Generate or inspect a graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Build, find, check and transform sail witnesses.
    #[command(subcommand)]
    Sail(SailCmd),
    /// Build or validate tree decompositions.
    #[command(subcommand)]
    Decomp(DecompCmd),
    /// Tree-width of a graph.
    Tw(TwArgs),
    /// Subdivision search, pattern scan and separator check.
    #[command(subcommand)]
    Obstruct(ObstructCmd),
    /// Tabulate sail order, tree-width, builder width and bound.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct WordArgs {
    /// nu | kappa:q | eta | periodic:a,b,c
    #[arg(long)]
    family: InfiniteWordSpec,
    /// Letter at this 1-based position.
    #[arg(long, conflicts_with = "prefix", required_unless_present = "prefix")]
    at: Option<usize>,
    /// The first this many letters.
    #[arg(long)]
    prefix: Option<usize>,
    /// Check the prefix for nestedness over letters up to this one.
    #[arg(long, requires = "prefix")]
    nested: Option<Letter>,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Brick wall with `rows` rows of `2 * cols` vertices.
    Wall {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Path-star graph of a word on some positions and star letters.
    PathStar(PathStarArgs),
    /// The `t`-sail with single-vertex paths.
    Canonical {
        #[arg(long)]
        t: usize,
    },
    /// Subdivided `t x t` wall with long bricks cut from the `kt x kt` wall.
    Surgery {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Complete graph on `n` vertices.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Complete bipartite graph with sides `a` and `b`.
    Biclique {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Line graph of a graph file.
    Line {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Parse a graph file and summarise it.
    Info {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args)]
struct PathStarArgs {
    #[arg(long)]
    family: InfiniteWordSpec,
    /// Comma-separated 1-based ranges, e.g. 3-5,9-10.
    #[arg(long)]
    positions: String,
    /// Star letters, same syntax as positions.
    #[arg(long)]
    stars: String,
}

#[derive(Subcommand)]
enum SailCmd {
    /// A `t`-sail from disjoint increasing intervals of a word.
    Build {
        #[arg(long)]
        family: InfiniteWordSpec,
        #[arg(long)]
        t: usize,
        /// Last position the interval search may use.
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
    /// Search a graph for a `t`-sail.
    Find {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Check a witness against a graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Clique minor model read off a witness.
    Minor {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Subdivide a sail so that no short cycle survives.
    Surgery {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum DecompCmd {
    /// Builder for the graph's word family.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// Overrides the family stored in the graph file.
        #[arg(long)]
        family: Option<InfiniteWordSpec>,
    },
    /// Min-fill decomposition.
    Heuristic {
        #[arg(long)]
        graph: PathBuf,
    },
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
}

#[derive(Args)]
struct TwArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum ObstructCmd {
    /// Look for subdivisions of K5, K4,4, the 4x4 wall and its line graph.
    Scan {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Look for a subdivision of one pattern.
    Contains {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Whether two stars are separated by deleting the path vertices
    /// reading the first or the `j`-th star letter.
    Separator {
        #[command(flatten)]
        graph: PathStarArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// One row per star set `1..=s` on a word prefix.
    Bounds {
        #[arg(long)]
        family: InfiniteWordSpec,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        prefix: usize,
        /// Use only this star set instead of every `1..=s`.
        #[arg(long)]
        stars: Option<String>,
        /// Fill in elapsed milliseconds (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Rows for random windows of a word.
    Sample {
        #[arg(long)]
        family: InfiniteWordSpec,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Windows are drawn inside positions 1..=span.
        #[arg(long, default_value_t = 60)]
        span: usize,
        #[arg(long, default_value_t = 20)]
        max_vertices: usize,
        #[arg(long)]
        timing: bool,
    },
}

/// A failed run: exit code and message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Limit { .. } | Error::SearchBound { .. } => 3,
            Error::Obstruction(_) | Error::Construction(_) | Error::Structural(_) => 1,
            Error::InvalidPosition(_) | Error::InvalidArgument(_) | Error::Precondition(_) | Error::Parse(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Output plus exit code; a validation failure still prints its report.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn failed_if(text: String, failed: bool) -> Self {
        Outcome { text, code: failed as u8 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut text = outcome.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome.code),
                Err(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn caps_for(cli: &Cli, set: impl FnOnce(&mut Caps, usize)) -> Caps {
    let mut caps = Caps::default();
    if let Some(cap) = cli.cap.or_else(Caps::env_override) {
        set(&mut caps, cap);
    }
    caps
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Word(args) => word(cli, args),
        Command::Graph(cmd) => graph(cli, cmd),
        Command::Sail(cmd) => sail(cli, cmd),
        Command::Decomp(cmd) => decomp(cli, cmd),
        Command::Tw(args) => tw(cli, args),
        Command::Obstruct(cmd) => obstruct(cli, cmd),
        Command::Experiment(cmd) => {
            let caps = caps_for(cli, |c, v| c.exact_tw_vertices = v);
            let format = pick(cli, &[Format::Csv, Format::Json], Format::Csv)?;
            experiment::run(cmd, &caps, format == Format::Csv)
        }
    }
}

fn pick(cli: &Cli, allowed: &[Format], default: Format) -> Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(bad_input("this command does not support that --format"))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    Ok(graph_from_json(&read(path)?)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

/// Comma-separated numbers and inclusive ranges `a-b`.
fn parse_ranges<T: Ord + Copy + std::str::FromStr + Into<u64> + TryFrom<u64>>(text: &str) -> Result<BTreeSet<T>, Failure> {
    let mut out = BTreeSet::new();
    let num = |s: &str| s.trim().parse::<T>().map_err(|_| bad_input(format!("bad number {s:?} in {text:?}")));
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?.into(), num(b)?.into());
                if a > b {
                    return Err(bad_input(format!("empty range {part:?}")));
                }
                for v in a..=b {
                    out.insert(T::try_from(v).map_err(|_| bad_input("range overflow"))?);
                }
            }
            None => {
                out.insert(num(part)?);
            }
        }
    }
    Ok(out)
}

fn parse_positions(text: &str) -> Result<BTreeSet<usize>, Failure> {
    let wide: BTreeSet<u64> = parse_ranges(text)?;
    Ok(wide.into_iter().map(|v| v as usize).collect())
}

fn path_star(args: &PathStarArgs, caps: &Caps) -> Result<LabeledGraph, Failure> {
    let positions = parse_positions(&args.positions)?;
    let stars: BTreeSet<Letter> = parse_ranges(&args.stars)?;
    Ok(path_star_graph(&args.family, &positions, &stars, caps)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn graph_value(g: &LabeledGraph) -> Value {
    serde_json::from_str(&graph_to_json(g)).expect("graph JSON parses")
}

fn word(cli: &Cli, args: &WordArgs) -> Result<Outcome, Failure> {
    let caps = caps_for(cli, |c, v| c.word_len = v);
    let format = pick(cli, &[Format::Text, Format::Json], Format::Text)?;
    if let Some(n) = args.at {
        let letter = args.family.letter_at(n)?;
        return Ok(Outcome::ok(match format {
            Format::Json => json!({ "family": args.family, "position": n, "letter": letter }).to_string(),
            _ => letter.to_string(),
        }));
    }
    let len = args.prefix.expect("clap requires --at or --prefix");
    let w = prefix(&args.family, len, &caps)?;
    if let Some(max) = args.nested {
        let report = is_nested(&w, max);
        return Ok(Outcome::failed_if(to_json(&report), !report.nested));
    }
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&w.letters),
        _ => w.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
    }))
}

fn graph(cli: &Cli, cmd: &GraphCmd) -> Result<Outcome, Failure> {
    let caps = caps_for(cli, |c, v| c.wall_vertices = v);
    let g = match cmd {
        GraphCmd::Wall { rows, cols } => wall(*rows, *cols, &caps)?,
        GraphCmd::PathStar(args) => path_star(args, &caps_for(cli, |c, v| c.word_len = v))?,
        GraphCmd::Canonical { t } => canonical_sail(*t)?.0,
        GraphCmd::Surgery { k, t } => wall_surgery(*k, *t, &caps)?,
        GraphCmd::Complete { n } => complete_graph(*n),
        GraphCmd::Biclique { a, b } => complete_bipartite_graph(*a, *b),
        GraphCmd::Line { graph } => line_graph(&load_graph(graph)?),
        GraphCmd::Info { graph } => {
            let g = load_graph(graph)?;
            let info = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "components": components(&g).len(),
                "max_degree": g.max_degree(),
                "girth": girth(&g),
                "stars": g.stars().len(),
                "family": g.family(),
            });
            pick(cli, &[Format::Json], Format::Json)?;
            return Ok(Outcome::ok(info.to_string()));
        }
    };
    Ok(Outcome::ok(match pick(cli, &[Format::Json, Format::Dot], Format::Json)? {
        Format::Dot => graph_to_dot(&g),
        _ => graph_to_json(&g),
    }))
}

fn sail(cli: &Cli, cmd: &SailCmd) -> Result<Outcome, Failure> {
    let caps = caps_for(cli, |c, v| c.sail_search_vertices = v);
    pick(cli, &[Format::Json], Format::Json)?;
    match cmd {
        SailCmd::Build { family, t, bound } => {
            let letters: Vec<Letter> = (1..=*t as Letter).collect();
            let intervals = find_increasing_intervals(family, &letters, *bound)?;
            let (g, w) = build_sail_from_intervals(family, &intervals, &letters, &caps)?;
            Ok(Outcome::ok(
                json!({ "graph": graph_value(&g), "witness": w, "intervals": intervals }).to_string(),
            ))
        }
        SailCmd::Find { graph, t } => {
            let g = load_graph(graph)?;
            match find_sail_witness(&g, *t, &caps)? {
                Some(w) => Ok(Outcome::ok(to_json(&w))),
                None => Ok(Outcome::failed_if("null".into(), true)),
            }
        }
        SailCmd::Check { graph, witness } => {
            let g = load_graph(graph)?;
            let w: SailWitness = load_json(witness)?;
            let defect = check_sail_witness(&g, &w)?;
            let report = json!({ "valid": defect.is_none(), "order": w.order(), "defect": defect });
            Ok(Outcome::failed_if(report.to_string(), defect.is_some()))
        }
        SailCmd::Minor { graph, witness } => {
            let g = load_graph(graph)?;
            let w: SailWitness = load_json(witness)?;
            let model = clique_minor_model(&g, &w)?;
            let defect = validate_minor_model(&g, &model)?;
            let report = json!({ "model": model, "defect": defect });
            Ok(Outcome::failed_if(report.to_string(), defect.is_some()))
        }
        SailCmd::Surgery { graph, witness, m } => {
            let g = load_graph(graph)?;
            let w: SailWitness = load_json(witness)?;
            let (h, hw) = sail_girth_surgery(&g, &w, *m)?;
            Ok(Outcome::ok(json!({ "graph": graph_value(&h), "witness": hw }).to_string()))
        }
    }
}

fn decomp(cli: &Cli, cmd: &DecompCmd) -> Result<Outcome, Failure> {
    pick(cli, &[Format::Json], Format::Json)?;
    match cmd {
        DecompCmd::Build { graph, t, family } => {
            let mut g = load_graph(graph)?;
            if family.is_some() {
                g = g.with_family(family.clone());
            }
            let built = match g.family() {
                Some(InfiniteWordSpec::Arithmetic) => build_nu(&g, *t),
                Some(InfiniteWordSpec::Power(q)) => build_kappa(&g, *q, *t),
                Some(InfiniteWordSpec::FibonacciType) => build_eta(&g, *t),
                _ => return Err(bad_input("the graph must carry family nu, kappa:q or eta")),
            };
            match built {
                Ok(td) => Ok(Outcome::ok(td.to_json())),
                Err(Error::Obstruction(ob)) => {
                    let report = json!({
                        "obstruction": ob.reason,
                        "component": ob.component,
                        "stars": ob.stars,
                        "witness": ob.witness,
                    });
                    Ok(Outcome::failed_if(report.to_string(), true))
                }
                Err(e) => Err(e.into()),
            }
        }
        DecompCmd::Heuristic { graph } => Ok(Outcome::ok(heuristic_treewidth_upper(&load_graph(graph)?).1.to_json())),
        DecompCmd::Validate { graph, td } => {
            let g = load_graph(graph)?;
            let td = TreeDecomposition::from_json(&read(td)?)?;
            let violations = validate_decomposition(&g, &td)?;
            let report = json!({ "valid": violations.is_empty(), "width": width(&td)?, "violations": violations });
            Ok(Outcome::failed_if(report.to_string(), !violations.is_empty()))
        }
    }
}

fn tw(cli: &Cli, args: &TwArgs) -> Result<Outcome, Failure> {
    let caps = caps_for(cli, |c, v| c.exact_tw_vertices = v);
    let g = load_graph(&args.graph)?;
    let (w, method) = match args.method {
        Method::Exact => (exact_treewidth(&g, &caps)?, "exact"),
        Method::Heuristic => (heuristic_treewidth_upper(&g).0, "heuristic"),
    };
    Ok(Outcome::ok(match pick(cli, &[Format::Text, Format::Json], Format::Text)? {
        Format::Json => json!({ "treewidth": w, "method": method }).to_string(),
        _ => w.to_string(),
    }))
}

fn obstruct(cli: &Cli, cmd: &ObstructCmd) -> Result<Outcome, Failure> {
    let caps = caps_for(cli, |c, v| c.subdivision_host_vertices = v);
    match cmd {
        ObstructCmd::Scan { graph } => {
            pick(cli, &[Format::Json], Format::Json)?;
            let report = kkw_scan(&load_graph(graph)?, &caps)?;
            let status = report.patterns.values();
            let code = if status.clone().any(|&s| s == PatternStatus::Present) {
                1
            } else if status.clone().any(|&s| s == PatternStatus::Cap) {
                3
            } else {
                0
            };
            Ok(Outcome { text: to_json(&report), code })
        }
        ObstructCmd::Contains { graph, pattern } => {
            pick(cli, &[Format::Json], Format::Json)?;
            let found = contains_subdivision(&load_graph(graph)?, &load_graph(pattern)?, &caps)?;
            let failed = found.is_none();
            Ok(Outcome::failed_if(to_json(&found), failed))
        }
        ObstructCmd::Separator { graph, i, j, k } => {
            let positions = parse_positions(&graph.positions)?;
            let stars: BTreeSet<Letter> = parse_ranges(&graph.stars)?;
            let separated = separator_check(&graph.family, &positions, &stars, *i, *j, *k, &Caps::default())?;
            let text = match pick(cli, &[Format::Text, Format::Json], Format::Text)? {
                Format::Json => json!({ "separated": separated }).to_string(),
                _ => separated.to_string(),
            };
            Ok(Outcome::failed_if(text, !separated))
        }
    }
}
