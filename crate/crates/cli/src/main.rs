use std::collections::BTreeSet;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use skewrank::graph::BlockDecomposition;
use skewrank::invariants::cycle_class;
use skewrank::suite::{run_suite_with_progress, CheckGroup, Mode, SuiteConfig, REPORT_SCHEMA_VERSION};
use skewrank::{
    bound_report, classify_lower_optimal, compress, delta_reduce, invariant_report, parse_graph_file,
    to_graph_file, Graph, OrientedGraph,
};

const THREADS_ENV: &str = "SKEWRANK_THREADS";
const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "skewrank", version, about = "Rank, skew-rank and lower-optimality of oriented graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and edge counts, ranks, nullity, cycle-space dimension,
    /// matching number and pendant count.
    Info {
        file: PathBuf,
        /// Also evaluate the rank bounds.
        #[arg(long)]
        bounds: bool,
    },
    /// Decide lower-optimality structurally and by direct computation.
    Classify { file: PathBuf },
    /// Greedy δ-reduction trace.
    Reduce { file: PathBuf },
    /// Shrink each cycle to a vertex (cycles must be vertex-disjoint).
    Compress { file: PathBuf },
    /// Length and orientation class of every cycle block.
    Cycles { file: PathBuf },
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest vertex count.
    #[arg(long = "n")]
    n: usize,
    /// Enumerate every labeled oriented graph with 1..=n vertices.
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    exhaustive: bool,
    /// Number of random graphs.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated check groups; all when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_group)]
    checks: Vec<CheckGroup>,
    /// Permit exhaustive enumeration at n = 6.
    #[arg(long)]
    allow_large: bool,
    /// Include wall time in the report (breaks byte-identical reruns).
    #[arg(long)]
    timing: bool,
    /// Progress lines on stderr.
    #[arg(long)]
    progress: bool,
}

fn parse_group(s: &str) -> Result<CheckGroup, String> {
    s.parse().map_err(|e: skewrank::Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    match run(&cli) {
        Ok((value, code)) => {
            let mut out = io::stdout().lock();
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("report serializes"),
                Format::Text => render_text(&value),
            };
            let _ = writeln!(out, "{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| input_error(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| input_error(e.to_string()))
}

fn read_graph(path: &Path) -> Result<OrientedGraph, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?
    };
    parse_graph_file(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn with_version(value: impl Serialize) -> Value {
    let mut v = serde_json::to_value(value).expect("report serializes");
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
    }
    v
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    match &cli.command {
        Command::Info { file, bounds } => {
            let og = read_graph(file)?;
            let mut v = with_version(invariant_report(&og));
            if *bounds {
                v["bounds"] = serde_json::to_value(bound_report(&og)).expect("bounds serialize");
            }
            Ok((v, 0))
        }
        Command::Classify { file } => {
            let og = read_graph(file)?;
            let verdict = classify_lower_optimal(&og);
            let agreement = verdict.agreement();
            let mut v = with_version(&verdict);
            v["agreement"] = json!(agreement);
            Ok((v, if agreement { 0 } else { EXIT_FAILURE }))
        }
        Command::Reduce { file } => {
            let og = read_graph(file)?;
            Ok((with_version(delta_reduce(og.graph())), 0))
        }
        Command::Compress { file } => {
            let og = read_graph(file)?;
            let cg = compress(og.graph()).map_err(|e| input_error(e.to_string()))?;
            Ok((
                json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "note": "orientations dropped: each edge is written as an arc from its smaller to its larger end",
                    "t_graph": undirected_file(&cg.t_graph),
                    "gamma": undirected_file(&cg.gamma),
                    "vertex_origin": cg.vertex_origin,
                    "cycles": cg.cycles,
                }),
                0,
            ))
        }
        Command::Cycles { file } => {
            let og = read_graph(file)?;
            Ok((cycles_report(&og)?, 0))
        }
        Command::Verify(args) => verify(args),
    }
}

fn undirected_file(g: &Graph) -> String {
    to_graph_file(&OrientedGraph::ascending(g))
}

fn cycles_report(og: &OrientedGraph) -> Result<Value, Failure> {
    let BlockDecomposition { blocks, .. } = og.graph().biconnected_blocks();
    let mut out = Vec::new();
    for b in blocks.iter().filter(|b| b.is_cyclic()) {
        if !b.is_chordless_cycle() {
            return Err(input_error(format!(
                "the block on vertices {:?} is not a single cycle, so its cycles are not determined by blocks",
                b.vertices
            )));
        }
        let seq = b.cycle_sequence();
        out.push(json!({
            "len": seq.len(),
            "class": cycle_class(og, &seq),
            "vertices": seq,
        }));
    }
    Ok(Value::Array(out))
}

fn verify(args: &VerifyArgs) -> Result<(Value, u8), Failure> {
    let checks: BTreeSet<CheckGroup> = if args.checks.is_empty() {
        CheckGroup::ALL.into_iter().collect()
    } else {
        args.checks.iter().copied().collect()
    };
    let cfg = SuiteConfig {
        mode: if args.exhaustive { Mode::Exhaustive } else { Mode::Random },
        n_max: args.n,
        samples: args.samples.unwrap_or(0),
        seed: args.seed,
        checks,
        allow_large: args.allow_large,
        timing: args.timing,
    };
    let progress = |done: u64, total: u64| {
        if args.progress {
            eprintln!("progress {done}/{total}");
        }
    };
    let report = run_suite_with_progress(&cfg, progress).map_err(|e| input_error(e.to_string()))?;
    let code = if report.all_passed { 0 } else { EXIT_FAILURE };
    Ok((serde_json::to_value(&report).expect("report serializes"), code))
}

/// Flat `key: value` rendering of a JSON report; multi-line strings (graph
/// files) are indented under their key.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, "", v);
    out.trim_end().to_string()
}

fn render_into(out: &mut String, prefix: &str, v: &Value) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                render_into(out, &key(k), x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                render_into(out, &key(&i.to_string()), x);
            }
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{prefix}:\n"));
            for line in s.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
