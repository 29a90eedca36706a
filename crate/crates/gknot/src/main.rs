//! Command-line front end: validation, Seifert data, index values,
//! bound reports, randomized sweeps, and the built-in example catalog.
//!
//! Exit codes: 0 ok, 1 semantic violation, 2 I/O or parse error,
//! 3 precondition failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gknot::bounds::{braid_index_report, crossing_bound, edge_bound_check, BoundReport, Verdict};
use gknot::braid::{closure, BraidWord};
use gknot::catalog;
use gknot::codec::{parse_braid, parse_diagram, parse_graph, serialize_graph};
use gknot::diagram::{curve_components, validate, Diagram, TheoryFamily, TheoryName};
use gknot::graph::planarity::{is_planar, Planarity};
use gknot::graph::{blocks, cut_edges, is_bipartite, Bipartiteness, LabeledMultigraph};
use gknot::index::{ind, TypeFilter};
use gknot::seifert::{seifert_circles, seifert_graph};
use gknot::sweep::{run_sweep, SweepConfig};

const EXIT_VIOLATION: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Parser)]
#[command(name = "gknot", about = "Seifert graphs, graph indices and braid-index bounds")]
struct Cli {
    /// Output style: prose or line-oriented key=value records
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate an input file
    Validate { path: PathBuf },
    /// Seifert circles and the Seifert graph of a diagram or braid closure
    Seifert { path: PathBuf },
    /// Graph index with certificate and block breakdown
    Ind {
        path: PathBuf,
        /// Named variant: all, 0, +, -, 0-, +-
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Evaluate the crossing-number and braid-index bounds
    Bounds {
        path: PathBuf,
        /// Diagram family; overrides any theory tag in the file
        #[arg(long)]
        theory: Option<String>,
        /// Named variant: all, 0, +, -, 0-, +- (used when no theory is known)
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Randomized falsification sweep over braid-word closures
    Sweep {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        /// Where to write reproducer words on failure
        #[arg(long)]
        reproducer: Option<PathBuf>,
    },
    /// Built-in examples with their expected records
    Catalog {
        /// Entry name; omit to list all
        name: Option<String>,
    },
}

struct Out {
    format: Format,
}

impl Out {
    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Records => println!("{key}={value}"),
            Format::Human => println!("{key}: {value}"),
        }
    }

    fn note(&self, text: &str) {
        if self.format == Format::Human {
            println!("{text}");
        }
    }
}

enum Input {
    Diagram(Diagram),
    Braid(BraidWord),
    Graph(LabeledMultigraph),
}

fn read_input(path: &PathBuf) -> Result<Input, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))?;
    let first = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => l[..i].trim(),
            None => l.trim(),
        })
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let kind_word = first.split_whitespace().next().unwrap_or("");
    match kind_word {
        "braid" => parse_braid(&text).map(Input::Braid),
        "edge" | "vertex" => parse_graph(&text).map(Input::Graph),
        _ => parse_diagram(&text).map(Input::Diagram),
    }
    .map_err(|e| match e {
        gknot::codec::CodecError::Invalid(report) => (EXIT_VIOLATION, report.to_string()),
        other => (EXIT_IO, other.to_string()),
    })
}

fn as_diagram(input: Input) -> Result<Diagram, (u8, String)> {
    match input {
        Input::Diagram(d) => Ok(d),
        Input::Braid(w) => Ok(closure(&w)),
        Input::Graph(_) => Err((EXIT_IO, "expected a diagram or braid word, got a graph".into())),
    }
}

fn as_graph(input: Input) -> Result<LabeledMultigraph, (u8, String)> {
    match input {
        Input::Graph(g) => Ok(g),
        other => {
            let d = as_diagram(other)?;
            seifert_graph(&d).map_err(|e| (EXIT_VIOLATION, e.to_string()))
        }
    }
}

fn parse_filter(s: &str) -> Result<TypeFilter, (u8, String)> {
    TypeFilter::parse_variant(s)
        .ok_or_else(|| (EXIT_IO, format!("unknown filter variant {s}; use all, 0, +, -, 0-, +-")))
}

fn cmd_validate(out: &Out, path: &PathBuf) -> Result<u8, (u8, String)> {
    match read_input(path) {
        Ok(Input::Diagram(d)) => {
            let report = validate(&d);
            out.kv("valid", report.is_valid());
            for v in &report.violations {
                out.kv("violation", v);
            }
            Ok(if report.is_valid() { 0 } else { EXIT_VIOLATION })
        }
        Ok(Input::Braid(w)) => {
            out.kv("valid", true);
            out.kv("strands", w.strands());
            out.kv("length", w.len());
            Ok(0)
        }
        Ok(Input::Graph(g)) => {
            out.kv("valid", true);
            out.kv("vertices", g.vertex_count());
            out.kv("edges", g.edge_count());
            Ok(0)
        }
        // a structurally invalid diagram is a semantic violation, not I/O
        Err((code, msg)) => {
            out.kv("valid", false);
            out.kv("error", &msg);
            Ok(code)
        }
    }
}

fn cmd_seifert(out: &Out, path: &PathBuf) -> Result<u8, (u8, String)> {
    let d = as_diagram(read_input(path)?)?;
    let circles = seifert_circles(&d).map_err(|e| (EXIT_VIOLATION, e.to_string()))?;
    let gamma = seifert_graph(&d).map_err(|e| (EXIT_VIOLATION, e.to_string()))?;
    out.kv("seifert_circles", circles.len());
    out.kv("curves", curve_components(&d).map_err(|e| (EXIT_VIOLATION, e.to_string()))?);
    for c in &circles {
        let t = if c.traversal.is_empty() { "(free loop)".to_string() } else { c.traversal.join(" ") };
        out.kv(&format!("circle.{}", c.id), t);
    }
    out.kv("gamma_vertices", gamma.vertex_count());
    out.kv("gamma_edges", gamma.edge_count());
    out.kv(
        "bipartite",
        matches!(is_bipartite(&gamma), Bipartiteness::Bipartite),
    );
    out.kv("planar", matches!(is_planar(&gamma), Planarity::Planar));
    out.note("gamma edge list:");
    for line in serialize_graph(&gamma).lines() {
        match out.format {
            Format::Records => println!("gamma.{line}"),
            Format::Human => println!("  {line}"),
        }
    }
    Ok(0)
}

fn cmd_ind(out: &Out, path: &PathBuf, filter: &str) -> Result<u8, (u8, String)> {
    let filter = parse_filter(filter)?;
    let g = as_graph(read_input(path)?)?;
    let (value, cert) = ind(&g, &filter);
    out.kv("filter", &filter);
    out.kv("ind", value);
    for (i, (edge, vertex)) in cert.steps.iter().enumerate() {
        out.kv(&format!("certificate.{}", i + 1), format!("{edge} contract_at {vertex}"));
    }
    let decomposition = blocks(&g);
    out.kv("blocks", decomposition.blocks.len());
    match is_bipartite(&g) {
        Bipartiteness::Bipartite => {
            let mut sum = 0;
            for (i, b) in decomposition.blocks.iter().enumerate() {
                let (bi, _) = ind(b, &filter);
                out.kv(&format!("block.{}.ind", i + 1), bi);
                sum += bi;
            }
            out.kv("block_sum", sum);
            if !cut_edges(&g).is_empty() {
                out.kv("note", "graph has cut edges; block sum may exceed ind");
            } else if sum != value {
                out.kv("error", "block additivity failed; this is a bug");
                return Ok(EXIT_VIOLATION);
            }
        }
        Bipartiteness::OddCycle(_) => {
            out.kv("warning", "graph is not bipartite; block sum not applicable");
        }
    }
    Ok(0)
}

fn render_report(out: &Out, r: &BoundReport) {
    out.kv("seifert_circles", r.s);
    out.kv("crossings", r.tc);
    out.kv("filter", &r.filter);
    out.kv("ind", r.ind_value);
    out.kv(
        "nugatory",
        if r.nugatory.is_empty() { "none".to_string() } else { r.nugatory.join(",") },
    );
    out.kv("edge_bound", &r.edge_bound_ok);
    out.kv("crossing_bound", &r.thm1_ok);
    if let Some(gb) = r.gb_upper {
        out.kv("gb_upper", gb); // upper bound on the braid index, not its value
    }
    if let Some(rhs) = r.thm2_rhs {
        out.kv("braid_index_bound_rhs", rhs);
    }
    out.kv("braid_index_bound", &r.thm2_ok);
    for a in &r.assumptions {
        out.kv("assumption", a);
    }
}

fn cmd_bounds(
    out: &Out,
    path: &PathBuf,
    theory: &Option<String>,
    filter: &str,
) -> Result<u8, (u8, String)> {
    let input = read_input(path)?;
    if let Input::Graph(g) = &input {
        let verdict = edge_bound_check(g);
        out.kv("vertices", g.vertex_count());
        out.kv("edges", g.edge_count());
        out.kv("edge_bound", &verdict);
        return Ok(match verdict {
            Verdict::Holds => 0,
            Verdict::Violated => EXIT_VIOLATION,
            Verdict::PreconditionFailed(_) => EXIT_PRECONDITION,
        });
    }
    let mut d = as_diagram(input)?;
    let theory_name = match theory {
        Some(s) => Some(
            TheoryName::parse(s).ok_or_else(|| (EXIT_IO, format!("unknown theory {s}")))?,
        ),
        None => d.theory,
    };
    let report = match theory_name {
        Some(name) => {
            d.theory = Some(name);
            out.kv("theory", name);
            braid_index_report(&d, &TheoryFamily::of(name))
        }
        None => {
            out.note("no theory given; reporting the crossing bound only");
            crossing_bound(&d, &parse_filter(filter)?)
        }
    }
    .map_err(|e| (EXIT_VIOLATION, e.to_string()))?;
    render_report(out, &report);
    if report.any_violated() {
        Ok(EXIT_VIOLATION)
    } else if [&report.thm1_ok, &report.thm2_ok]
        .iter()
        .any(|v| matches!(v, Verdict::PreconditionFailed(_)))
    {
        Ok(EXIT_PRECONDITION)
    } else {
        Ok(0)
    }
}

fn cmd_sweep(
    out: &Out,
    seed: u64,
    count: usize,
    max_strands: usize,
    max_length: usize,
    reproducer: &Option<PathBuf>,
) -> Result<u8, (u8, String)> {
    let cfg = SweepConfig { seed, count, max_strands, max_length, ..SweepConfig::default() };
    let result = run_sweep(&cfg);
    out.kv("seed", seed);
    out.kv("words", result.words);
    out.kv("checks", result.checks);
    out.kv("crossing_bound_checked", result.thm1_checked);
    out.kv("crossing_bound_skipped", result.thm1_skipped);
    out.kv("violations", result.violations.len());
    for n in &result.notes {
        out.kv("note", n);
    }
    if result.ok() {
        return Ok(0);
    }
    for v in &result.violations {
        out.kv("violation", format!("{}: {}", v.property, v.detail));
    }
    let path = reproducer
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("sweep-reproducers-seed{seed}.txt")));
    let mut body = String::new();
    for v in &result.violations {
        body.push_str(&format!("# {}: {}\n{}", v.property, v.detail, v.reproducer));
    }
    std::fs::write(&path, body).map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))?;
    out.kv("reproducer_file", path.display());
    Ok(EXIT_VIOLATION)
}

fn cmd_catalog(out: &Out, name: &Option<String>) -> Result<u8, (u8, String)> {
    let entries = catalog::entries();
    match name {
        None => {
            for e in &entries {
                out.kv(e.name, e.kind.as_str());
            }
            Ok(0)
        }
        Some(n) => {
            let e = entries
                .iter()
                .find(|e| e.name == *n)
                .ok_or_else(|| (EXIT_IO, format!("no catalog entry named {n}")))?;
            out.kv("name", e.name);
            out.kv("kind", e.kind.as_str());
            for line in e.text.lines() {
                match out.format {
                    Format::Records => println!("input.{line}"),
                    Format::Human => println!("  {line}"),
                }
            }
            for (k, v) in &e.expected {
                out.kv(&format!("expected.{k}"), v);
            }
            Ok(0)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    let out = Out { format: cli.format };
    match &cli.cmd {
        Cmd::Validate { path } => cmd_validate(&out, path),
        Cmd::Seifert { path } => cmd_seifert(&out, path),
        Cmd::Ind { path, filter } => cmd_ind(&out, path, filter),
        Cmd::Bounds { path, theory, filter } => cmd_bounds(&out, path, theory, filter),
        Cmd::Sweep { seed, count, max_strands, max_length, reproducer } => {
            cmd_sweep(&out, *seed, *count, *max_strands, *max_length, reproducer)
        }
        Cmd::Catalog { name } => cmd_catalog(&out, name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
