use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chhf::error::{Error, Result};
use chhf::factor::{Augmented, XGraph};
use chhf::generate;
use chhf::graph::Graph;
use chhf::io::{self, Format};
use chhf::metrics::{bottleneck_delta, gromov_delta, HalfInt};
use chhf::pipeline::Triple;
use chhf::qm::Geometry;
use chhf::verify::{full_report, VerifyConfig, DEFAULT_CHOICE_CAP, DEFAULT_DAG_CAP};

#[derive(Parser)]
#[command(name = "chhf", version, about = "Factor systems, quasi-median geometry and hierarchy axiom checks on finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as JSON.
    Generate {
        #[command(subcommand)]
        kind: Kind,
        /// Output file; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Hyperplanes (edge classes) of the input graph.
    Hyperplanes(RunArgs),
    /// Crossing graph of the hyperplanes.
    Crossing(RunArgs),
    /// Contact graph of the hyperplanes.
    Contact(RunArgs),
    /// Domains and relations of the factor system.
    FactorSystem(RunArgs),
    /// The augmented graph CX with edge kinds.
    Augment(RunArgs),
    /// Four-point Gromov δ of the input graph.
    Delta(RunArgs),
    /// Bottleneck constant of the augmented graph.
    Bottleneck(RunArgs),
    /// Axiom reports only; exits 5 if any check fails its bound.
    CheckAxioms(RunArgs),
    /// Axioms, constants and uniqueness table, as JSON and text.
    FullReport(RunArgs),
}

#[derive(Subcommand)]
enum Kind {
    Hypercube { n: usize },
    /// Random recursive tree.
    Tree { n: usize, #[arg(default_value_t = 0)] seed: u64 },
    /// The Cartesian power `K_q^d`.
    Hamming { q: usize, d: usize },
    /// Cartesian product of two graph files.
    Product { a: PathBuf, b: PathBuf },
    GluedSquares { k: usize },
    Path { n: usize },
    Cycle { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipelineArg {
    Generic,
    Qm,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to JSON for `.json` files and to edge lists otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "qm")]
    pipeline: PipelineArg,
    /// JSON list of adjacent maximal-clique index pairs (generic pipeline).
    #[arg(long)]
    w_adjacency: Option<PathBuf>,
    #[arg(long, default_value_t = chhf::factor::DEFAULT_CLOSURE_CAP)]
    cap_closure: usize,
    #[arg(long, default_value_t = DEFAULT_DAG_CAP)]
    cap_dag: usize,
    #[arg(long, default_value_t = DEFAULT_CHOICE_CAP)]
    cap_choices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `NAME=VALUE` bound on a check's constant; also accepted as `--bound-NAME VALUE`.
    #[arg(long = "bound", value_parser = parse_bound)]
    bounds: Vec<(String, HalfInt)>,
    /// Directory for the JSON (and DOT) artifacts; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also emit DOT where a graph is produced.
    #[arg(long)]
    dot: bool,
}

fn parse_bound(s: &str) -> std::result::Result<(String, HalfInt), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value.parse().map_err(|e| format!("bound {value:?}: {e}"))?;
    let doubled = v * 2.0;
    if v < 0.0 || doubled.fract() != 0.0 {
        return Err(format!("bound {value:?} is not a nonnegative multiple of 1/2"));
    }
    Ok((name.replace('-', "_"), HalfInt::from_doubled(doubled as u64)))
}

/// Rewrites `--bound-NAME VALUE` and `--bound-NAME=VALUE` into `--bound NAME=VALUE`.
fn normalize_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.peekable();
    while let Some(a) = it.next() {
        match a.strip_prefix("--bound-") {
            Some(rest) => {
                let pair = match rest.split_once('=') {
                    Some((n, v)) => format!("{n}={v}"),
                    None => format!("{rest}={}", it.next().unwrap_or_default()),
                };
                out.push("--bound".into());
                out.push(pair);
            }
            None => out.push(a),
        }
    }
    out
}

fn read_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    let format = match format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Edgelist) => Format::EdgeList,
        None if path.extension().is_some_and(|e| e == "json") => Format::Json,
        None => Format::EdgeList,
    };
    io::parse(&text, format)
}

fn triple(args: &RunArgs) -> Result<Triple> {
    let g = read_graph(&args.input, args.format)?;
    match args.pipeline {
        PipelineArg::Qm => {
            if args.w_adjacency.is_some() {
                return Err(Error::Precondition("--w-adjacency applies to the generic pipeline only".into()));
            }
            Triple::quasi_median(g, args.cap_closure)
        }
        PipelineArg::Generic => {
            let pairs = match &args.w_adjacency {
                Some(p) => Some(XGraph::parse_adjacency(&fs::read_to_string(p)?)?),
                None => None,
            };
            Triple::generic(g, pairs.as_deref(), args.cap_closure)
        }
    }
}

fn config(args: &RunArgs) -> VerifyConfig {
    VerifyConfig {
        cap_closure: args.cap_closure,
        cap_dag: args.cap_dag,
        cap_choices: args.cap_choices,
        seed: args.seed,
        bounds: args.bounds.iter().cloned().collect::<BTreeMap<_, _>>(),
    }
}

struct Artifacts<'a> {
    args: &'a RunArgs,
    name: &'static str,
}

impl Artifacts<'_> {
    fn emit(&self, value: &Value, dot: Option<String>, text: Option<String>) -> Result<()> {
        let body = serde_json::to_string_pretty(value)?;
        match &self.args.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join(format!("{}.json", self.name)), body + "\n")?;
                if let (true, Some(d)) = (self.args.dot, dot) {
                    fs::write(dir.join(format!("{}.dot", self.name)), d)?;
                }
                if let Some(t) = text {
                    fs::write(dir.join(format!("{}.txt", self.name)), t)?;
                }
            }
            None => {
                println!("{body}");
                if let (true, Some(d)) = (self.args.dot, dot) {
                    print!("{d}");
                }
            }
        }
        Ok(())
    }
}

fn generate_graph(kind: &Kind) -> Result<Graph> {
    match kind {
        Kind::Hypercube { n } => generate::hypercube(*n),
        Kind::Tree { n, seed } => Ok(generate::random_tree(*n, *seed)),
        Kind::Hamming { q, d } => generate::hamming(*q, *d),
        Kind::Product { a, b } => Ok(generate::cartesian_product(&read_graph(a, None)?, &read_graph(b, None)?)),
        Kind::GluedSquares { k } => generate::glued_squares(*k),
        Kind::Path { n } => Ok(generate::path(*n)),
        Kind::Cycle { n } => generate::cycle(*n),
    }
}

fn run(command: Command) -> Result<i32> {
    let (args, name) = match &command {
        Command::Generate { kind, out } => {
            let text = io::to_json_string(&generate_graph(kind)?) + "\n";
            match out {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
            return Ok(0);
        }
        Command::Hyperplanes(a) => (a, "hyperplanes"),
        Command::Crossing(a) => (a, "crossing"),
        Command::Contact(a) => (a, "contact"),
        Command::FactorSystem(a) => (a, "factor_system"),
        Command::Augment(a) => (a, "augment"),
        Command::Delta(a) => (a, "delta"),
        Command::Bottleneck(a) => (a, "bottleneck"),
        Command::CheckAxioms(a) => (a, "axioms"),
        Command::FullReport(a) => (a, "full_report"),
    };
    let out = Artifacts { args, name };
    match command {
        Command::Hyperplanes(_) | Command::Crossing(_) | Command::Contact(_) => {
            let g = read_graph(&args.input, args.format)?;
            let geo = Geometry::new(g);
            let (value, dot) = match name {
                "hyperplanes" => {
                    let labelled: Vec<Value> = geo
                        .hyperplanes()
                        .iter()
                        .map(|h| {
                            let edges: Vec<[&str; 2]> =
                                h.edges.iter().map(|&(u, v)| [geo.graph().label(u), geo.graph().label(v)]).collect();
                            json!({ "id": h.id, "edges": edges })
                        })
                        .collect();
                    (json!({ "count": labelled.len(), "hyperplanes": labelled }), None)
                }
                "crossing" => {
                    let c = geo.crossing_graph();
                    (io::to_json(&c), Some(io::to_dot(&c, "crossing")))
                }
                _ => {
                    let c = geo.contact_graph();
                    (io::to_json(&c), Some(io::to_dot(&c, "contact")))
                }
            };
            out.emit(&value, dot, None)?;
        }
        Command::Delta(_) => {
            let g = read_graph(&args.input, args.format)?;
            let r = gromov_delta(&g)?;
            out.emit(&serde_json::to_value(r)?, None, None)?;
        }
        Command::FactorSystem(_) => {
            let t = triple(args)?;
            out.emit(&t.fs.to_json(), Some(io::to_dot(t.fs.host(), "host")), None)?;
        }
        Command::Augment(_) => {
            let t = triple(args)?;
            let cx = Augmented::build(&t.fs, &t.w)?;
            out.emit(&cx.to_json(None), Some(cx.to_dot(None, "augmented")), None)?;
        }
        Command::Bottleneck(_) => {
            let t = triple(args)?;
            let cx = Augmented::build(&t.fs, &t.w)?;
            let r = bottleneck_delta(cx.graph())?;
            out.emit(&serde_json::to_value(r)?, None, None)?;
        }
        Command::CheckAxioms(_) | Command::FullReport(_) => {
            let t = triple(args)?;
            let report = full_report(&t, &config(args), &args.input.display().to_string())?;
            let code = report.exit_code();
            if name == "axioms" {
                let value = json!({ "axioms": report.axioms, "verdict": report.verdict });
                out.emit(&value, None, None)?;
            } else {
                let text = report.to_text();
                out.emit(&serde_json::to_value(&report)?, None, Some(text.clone()))?;
                if args.out.is_none() {
                    eprint!("{text}");
                }
            }
            return Ok(code);
        }
        Command::Generate { .. } => unreachable!("handled above"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(normalize_args(std::env::args()));
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
