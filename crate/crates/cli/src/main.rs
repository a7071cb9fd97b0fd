//! `fourblock`: separating triangles and 4-block trees from the command line.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use fourblock::embedding::{parse_rotation_graph, validate_triangulation, write_rotation_graph, RotationGraph};
use fourblock::generators::{GenKind, GenSpec};
use fourblock::oracle::{brute_4block_tree, brute_separating_triangles, tree_diff};
use fourblock::pipeline::{run, Decomposition, PipelineError};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "fourblock", version, about = "4-block trees of embedded planar triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is an embedded triangulation; findings go to stdout.
    Validate(InputArg),
    /// List the separating triangles, one `u v w` per line.
    Triangles(InputArg),
    /// List the separating triangles innermost-first with their discovery data.
    Order(InputArg),
    /// Compute the 4-block tree.
    Decompose {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the pipeline and the brute-force oracle and compare.
    Verify {
        /// Rotation-format file; `-` or omitted reads stdin unless `--gen` is given.
        input: Option<PathBuf>,
        /// Generate instances of this kind instead of reading input.
        #[arg(long, value_name = "KIND", value_parser = parse_kind)]
        gen: Option<GenKind>,
        #[command(flatten)]
        params: GenParams,
        /// Number of generated instances; instance `i` uses seed `seed + i`.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Write a generated instance in rotation format.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[command(flatten)]
        params: GenParams,
    },
    /// Time the pipeline on generated instances, one row per size.
    Bench {
        #[arg(long, value_parser = parse_kind, default_value = "nested-chain")]
        kind: GenKind,
        /// Comma-separated generator sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, env = "QB_SEED", default_value_t = 0)]
        seed: u64,
        /// Runs per size; the fastest is reported.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

#[derive(Args)]
struct InputArg {
    /// Rotation-format file; `-` or omitted reads stdin.
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GenParams {
    /// Vertex count for apollonian, nesting depth for nested-chain.
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, env = "QB_SEED", default_value_t = 0)]
    seed: u64,
    /// Fixture name for the canonical kind: triangle, k4, canon5, canon7.
    #[arg(long, default_value = "canon5")]
    name: String,
}

impl GenParams {
    fn spec(&self, kind: GenKind, seed: u64) -> GenSpec {
        GenSpec { kind, size: self.n, seed, name: self.name.clone() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse()
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(e: anyhow::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("{e:#}") }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(Failure::io)
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin").map_err(Failure::io)?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Result<RotationGraph, Failure> {
    let text = read_text(path)?;
    parse_rotation_graph(&text).map_err(|e| Failure::invalid(format!("parse error: {e}")))
}

fn pipeline(g: RotationGraph) -> Result<Decomposition, Failure> {
    run(g, true).map_err(|e| match e {
        PipelineError::Invalid(d) => Failure::invalid(d.to_string().trim_end()),
        other => Failure::invalid(other.to_string()),
    })
}

fn generate(spec: &GenSpec) -> Result<RotationGraph, Failure> {
    spec.generate().map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_validate(input: InputArg, out: &mut impl Write) -> Outcome {
    let g = read_graph(input.input.as_deref())?;
    let d = validate_triangulation(&g);
    if d.is_empty() {
        return emit(out, "valid\n");
    }
    emit(out, &d.to_string())?;
    Err(Failure::invalid(format!("{} findings", d.findings.len())))
}

fn cmd_triangles(input: InputArg, out: &mut impl Write) -> Outcome {
    let g = read_graph(input.input.as_deref())?;
    let result = pipeline(g)?;
    let mut triples: Vec<[u32; 3]> = result.order.iter().map(|t| t.origins(&result.tree.graph)).collect();
    triples.sort_unstable();
    let mut s = String::new();
    for [u, v, w] in triples {
        writeln!(s, "{u} {v} {w}").unwrap();
    }
    emit(out, &s)
}

fn cmd_order(input: InputArg, out: &mut impl Write) -> Outcome {
    let g = read_graph(input.input.as_deref())?;
    let result = pipeline(g.clone())?;
    let mut s = String::new();
    for t in &result.order {
        let [u, v, w] = t.origins(&g);
        let disc = t.discovery.expect("ordered triangles carry discovery data");
        let r = disc.reference_edge;
        writeln!(
            s,
            "{u} {v} {w}  ref={}->{}  angle={}  time={}",
            g.origin(g.tail(r)),
            g.origin(g.head(r)),
            disc.internal_angle,
            disc.time
        )
        .unwrap();
    }
    emit(out, &s)
}

fn cmd_decompose(input: InputArg, format: Format, dest: Option<PathBuf>, out: &mut impl Write) -> Outcome {
    let g = read_graph(input.input.as_deref())?;
    let tree = pipeline(g)?.tree;
    let mut text = match format {
        Format::Json => tree.to_json().map_err(|e| Failure::invalid(e.to_string()))?,
        Format::Dot => tree.to_dot(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match dest {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display())).map_err(Failure::io),
        None => emit(out, &text),
    }
}

/// One verified instance.
struct RunReport {
    label: String,
    n: usize,
    m: usize,
    separating: usize,
    list_ms: f64,
    order_ms: f64,
    split_ms: f64,
    transfers: usize,
    diff: Option<String>,
}

impl RunReport {
    fn agrees(&self) -> bool {
        self.diff.is_none()
    }

    fn line(&self) -> String {
        format!(
            "{}  n={} m={} T={}  list={:.3}ms order={:.3}ms split={:.3}ms  transfers={}  agree={}",
            self.label,
            self.n,
            self.m,
            self.separating,
            self.list_ms,
            self.order_ms,
            self.split_ms,
            self.transfers,
            self.agrees()
        )
    }
}

fn verify_one(label: String, g: RotationGraph) -> Result<RunReport, Failure> {
    let expected = brute_separating_triangles(&g);
    let brute = brute_4block_tree(&g);
    let result = pipeline(g)?;
    let graph = &result.tree.graph;
    let mut found: Vec<[u32; 3]> = result.order.iter().map(|t| t.origins(graph)).collect();
    found.sort_unstable();

    let mut diff = Vec::new();
    for t in expected.iter().filter(|t| found.binary_search(t).is_err()) {
        diff.push(format!("missing separating triangle {t:?}"));
    }
    for t in found.iter().filter(|t| expected.binary_search(t).is_err()) {
        diff.push(format!("spurious separating triangle {t:?}"));
    }
    if diff.is_empty() {
        diff.extend(tree_diff(&result.tree, &brute));
    }
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    let s = &result.stats;
    Ok(RunReport {
        label,
        n: s.vertices,
        m: s.edges,
        separating: s.separating,
        list_ms: ms(s.timings.triangles),
        order_ms: ms(s.timings.ordering),
        split_ms: ms(s.timings.splitting),
        transfers: s.transfers,
        diff: (!diff.is_empty()).then(|| diff.join("\n")),
    })
}

fn cmd_verify(
    input: Option<PathBuf>,
    kind: Option<GenKind>,
    params: GenParams,
    count: u64,
    out: &mut impl Write,
) -> Outcome {
    let reports: Vec<RunReport> = match kind {
        None => vec![verify_one("input".to_string(), read_graph(input.as_deref())?)?],
        Some(kind) => (0..count)
            .into_par_iter()
            .map(|i| {
                let spec = params.spec(kind, params.seed.wrapping_add(i));
                let label = format!("seed={}", spec.seed);
                verify_one(label, generate(&spec)?)
            })
            .collect::<Result<_, _>>()?,
    };
    let mut s = String::new();
    for r in &reports {
        writeln!(s, "{}", r.line()).unwrap();
        if let Some(d) = &r.diff {
            for l in d.lines() {
                writeln!(s, "  {l}").unwrap();
            }
        }
    }
    let bad = reports.iter().filter(|r| !r.agrees()).count();
    writeln!(s, "{} of {} instances agree", reports.len() - bad, reports.len()).unwrap();
    emit(out, &s)?;
    if bad > 0 {
        return Err(Failure { code: EXIT_MISMATCH, message: format!("{bad} instances disagree with the oracle") });
    }
    Ok(())
}

fn cmd_gen(kind: GenKind, params: GenParams, out: &mut impl Write) -> Outcome {
    let g = generate(&params.spec(kind, params.seed))?;
    emit(out, &write_rotation_graph(&g))
}

fn cmd_bench(kind: GenKind, sizes: Vec<usize>, seed: u64, repeat: usize, out: &mut impl Write) -> Outcome {
    writeln!(out, "size\tn\tm\twall_ms\ttransfers")?;
    for size in sizes {
        let g = generate(&GenSpec { kind, size, seed, name: "canon5".to_string() })?;
        let (n, m) = (g.vertex_count(), g.edge_count());
        let mut best = f64::INFINITY;
        let mut transfers = 0;
        for _ in 0..repeat.max(1) {
            let input = g.clone();
            let clock = Instant::now();
            let result = run(input, false).map_err(|e| Failure::invalid(e.to_string()))?;
            best = best.min(clock.elapsed().as_secs_f64() * 1e3);
            transfers = result.stats.transfers;
        }
        writeln!(out, "{size}\t{n}\t{m}\t{best:.3}\t{transfers}")?;
        out.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_IO) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = match cli.command {
        Command::Validate(input) => cmd_validate(input, &mut out),
        Command::Triangles(input) => cmd_triangles(input, &mut out),
        Command::Order(input) => cmd_order(input, &mut out),
        Command::Decompose { input, format, out: dest } => cmd_decompose(input, format, dest, &mut out),
        Command::Verify { input, gen, params, count } => cmd_verify(input, gen, params, count, &mut out),
        Command::Gen { kind, params } => cmd_gen(kind, params, &mut out),
        Command::Bench { kind, sizes, seed, repeat } => cmd_bench(kind, sizes, seed, repeat, &mut out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fourblock: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
