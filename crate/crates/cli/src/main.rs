mod counting;
mod error;
mod output;
mod range;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linematch::lattices::{generate, predict, LatticeSpec};
use linematch::linegraph::{
    clique_inserted, line_graph, recognize_cubic_line_graph, subdivide_all, Recognition,
};
use linematch::random::{random_cubic_multigraph, random_instance, random_simple_cubic, seeded};
use linematch::reduction::{reduce, replay_trace, ReduceOptions, ReductionTrace};
use linematch::transforms::{eliminate_pendants, subdivide_edge, PendantRule};
use linematch::{EdgeId, MultiGraph};
use serde::Serialize;
use serde_json::json;

use counting::{Algo, Limits};
use error::CliError;
use output::{emit, read_input, render_graph, write_graph, GraphOut};
use range::parse_range;
use sweep::TableFormat;

/// Exact perfect-matching counts of line graphs and lattices.
#[derive(Parser)]
#[command(name = "linematch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a lattice or a seeded random graph.
    Gen(GenArgs),
    /// Count perfect matchings exactly.
    Count {
        /// Graph file (JSON or edge list), `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = CountFormat::Plain)]
        format: CountFormat,
        /// Count matchings of the line graph instead.
        #[arg(long)]
        line: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run the reduction engine and write its trace.
    Trace {
        input: PathBuf,
        /// Recount both sides of every step on graphs with at most this many
        /// vertices.
        #[arg(long, value_name = "VERTICES")]
        check_steps: Option<usize>,
        /// Remove degree-1 vertices by pendant reductions first.
        #[arg(long)]
        pendant_fix: bool,
        /// Write the JSON trace here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Re-verify a saved trace independently of the engine.
    Replay {
        trace: PathBuf,
        /// Recount steps on graphs with at most this many vertices.
        #[arg(long, default_value_t = 24)]
        recount_up_to: usize,
    },
    /// Compare counted values against the closed forms over parameter ranges.
    Verify {
        /// Family slugs (comma-separated) or `all`.
        #[arg(long, required = true, value_delimiter = ',')]
        family: Vec<String>,
        #[arg(long, default_value = "1..2")]
        n: String,
        #[arg(long, default_value = "1..2")]
        m: String,
        #[arg(long, default_value = "0..3")]
        stage: String,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Fill the elapsed_ms column.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Finite-size entropies next to the closed forms and limits.
    Entropy {
        #[arg(long, required = true, value_delimiter = ',')]
        family: Vec<String>,
        /// Diagonal sizes `n = m` (stages for staged families).
        #[arg(long, default_value = "1..3")]
        sizes: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Only print the closed-form columns.
        #[arg(long)]
        no_count: bool,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[command(flatten)]
        limits: Limits,
    },
    /// Build the line graph, the clique-inserted graph, or recognize one.
    Linegraph {
        input: PathBuf,
        /// Build L(S(G)) for a connected cubic G.
        #[arg(long, conflicts_with = "recognize")]
        clique_inserted: bool,
        /// Classify a cubic graph as K4, clique-inserted or neither.
        #[arg(long)]
        recognize: bool,
        /// Include the edge of G behind every vertex (JSON only).
        #[arg(long)]
        origins: bool,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Subdivide one edge, or every edge once.
    Subdivide {
        input: PathBuf,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        edge: Option<usize>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Full subdivision S(G).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Remove all degree-1 vertices by count-preserving pendant reductions.
    PendantFix {
        input: PathBuf,
        #[command(flatten)]
        out: GraphOut,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CountFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RandomKind {
    /// Connected, degrees 2 and 3, even edge count; `--size` bounds the edges.
    Instance,
    /// Connected cubic multigraph by stub pairing; `--size` vertices.
    Cubic,
    /// Connected simple cubic graph; `--size` vertices.
    SimpleCubic,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    stage: Option<usize>,
    /// Draw a random graph instead of a lattice.
    #[arg(long, value_enum)]
    random: Option<RandomKind>,
    /// Seed for ChaCha8; the same seed gives the same graph everywhere.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 14)]
    size: usize,
    #[command(flatten)]
    out: GraphOut,
}

#[derive(Serialize)]
struct LatticeMetadata {
    family: String,
    params: serde_json::Value,
    /// `M(counted graph) = 2^predicted_exponent`; null when the count is 0.
    predicted_exponent: Option<u64>,
    predicted_count: String,
    /// `graph`, or `line graph` when the prediction is for `L(graph)`.
    counted: &'static str,
    degenerate: bool,
}

#[derive(Serialize)]
struct RandomMetadata {
    generator: &'static str,
    seed: u64,
    size: usize,
}

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    if let Some(kind) = args.random {
        let mut rng = seeded(args.seed);
        let (g, generator) = match kind {
            RandomKind::Instance if args.size < 4 => {
                return Err(CliError::Usage("--size must be at least 4".into()))
            }
            RandomKind::Instance => (random_instance(&mut rng, args.size), "instance"),
            _ if args.size < 2 || args.size % 2 == 1 => {
                return Err(CliError::Usage("--size must be even and at least 2".into()))
            }
            RandomKind::SimpleCubic if args.size < 4 => {
                return Err(CliError::Usage("--size must be at least 4".into()))
            }
            RandomKind::Cubic => (random_cubic_multigraph(&mut rng, args.size), "cubic"),
            RandomKind::SimpleCubic => (random_simple_cubic(&mut rng, args.size), "simple-cubic"),
        };
        let meta = RandomMetadata {
            generator,
            seed: args.seed,
            size: args.size,
        };
        return emit(
            args.out.out.as_deref(),
            &render_graph(&g, Some(&meta), args.out.format),
        );
    }
    let family = args
        .family
        .as_deref()
        .expect("clap requires --family without --random")
        .parse()
        .map_err(CliError::usage)?;
    let spec = if linematch::lattices::Family::is_staged(family) {
        let stage = args
            .stage
            .ok_or_else(|| CliError::Usage(format!("{family} needs --stage")))?;
        LatticeSpec::staged(family, stage)
    } else {
        match (args.n, args.m) {
            (Some(n), Some(m)) => LatticeSpec::grid(family, n, m),
            _ => return Err(CliError::Usage(format!("{family} needs --n and --m"))),
        }
    };
    let generated = generate(&spec).map_err(CliError::usage)?;
    let prediction = predict(&spec).map_err(CliError::usage)?;
    let params = if family.is_staged() {
        json!({ "stage": spec.stage })
    } else {
        json!({ "n": spec.n, "m": spec.m })
    };
    let meta = LatticeMetadata {
        family: family.slug().to_string(),
        params,
        predicted_exponent: prediction.pow2_exponent,
        predicted_count: prediction.pow2_exponent.map_or_else(
            || "0".to_string(),
            |k| (num_bigint::BigUint::from(1u8) << k).to_string(),
        ),
        counted: if generated.graph == generated.target {
            "graph"
        } else {
            "line graph"
        },
        degenerate: generated.degenerate,
    };
    emit(
        args.out.out.as_deref(),
        &render_graph(&generated.graph, Some(&meta), args.out.format),
    )
}

fn cmd_count(
    input: &Path,
    algo: Algo,
    format: CountFormat,
    line: bool,
    limits: Limits,
) -> Result<(), CliError> {
    let mut g = read_input(input)?;
    if line {
        g = line_graph(&g).graph;
    }
    let c = counting::count(&g, algo, limits)?;
    let text = match format {
        CountFormat::Plain => c.value.to_string(),
        CountFormat::Json => json!({
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "count": c.value.to_string(),
            "pow2_exponent": c.pow2_exponent,
            "algorithm": c.algorithm,
        })
        .to_string(),
    };
    emit(None, &text)
}

fn cmd_trace(
    input: &Path,
    check_steps: Option<usize>,
    pendant_fix: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let g = read_input(input)?;
    let trace = reduce(
        &g,
        ReduceOptions {
            check_steps_up_to: check_steps,
            pendant_fix,
        },
    )?;
    if let Some(path) = out {
        emit(Some(path), &trace.to_json())?;
    }
    emit(
        None,
        &format!(
            "{}\nsteps: {}, checked: {}",
            trace.summary_line(),
            trace.steps.len(),
            trace.checked_steps()
        ),
    )
}

fn cmd_replay(path: &Path, recount_up_to: usize) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let trace = ReductionTrace::from_json(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let report = replay_trace(&trace, recount_up_to)?;
    emit(
        None,
        &format!(
            "trace ok: {} steps, {} recounted, M(L(G)) = {}",
            report.steps, report.recounted, report.claimed
        ),
    )
}

#[derive(Serialize)]
struct Table<'a, R: Serialize> {
    rows: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<&'a sweep::Summary>,
}

fn print_table<R: Serialize>(
    rows: &[R],
    summary: Option<&sweep::Summary>,
    format: TableFormat,
) -> Result<(), CliError> {
    let text = match format {
        TableFormat::Csv => sweep::to_csv(rows)?,
        TableFormat::Json => {
            serde_json::to_string_pretty(&Table { rows, summary }).expect("report serializes")
        }
    };
    emit(None, &text)
}

fn cmd_linegraph(
    input: &Path,
    clique: bool,
    recognize: bool,
    origins: bool,
    out: &GraphOut,
) -> Result<(), CliError> {
    let g = read_input(input)?;
    if recognize {
        let r = recognize_cubic_line_graph(&g).map_err(CliError::usage)?;
        let v = match r {
            Recognition::IsK4 => json!({ "recognition": "k4", "preimage": null }),
            Recognition::CliqueInserted(p) => {
                json!({ "recognition": "clique-inserted", "preimage": p })
            }
            Recognition::NotALineGraph => {
                json!({ "recognition": "not-a-line-graph", "preimage": null })
            }
        };
        return emit(out.out.as_deref(), &v.to_string());
    }
    if clique {
        let c = clique_inserted(&g).map_err(CliError::usage)?;
        return write_graph(&c, out);
    }
    let l = line_graph(&g);
    if origins && out.format == output::GraphFormat::Json {
        let mut v = serde_json::to_value(&l.graph).expect("graph serializes");
        v["origin_edge"] = json!(l.origin_edge);
        return emit(out.out.as_deref(), &v.to_string());
    }
    write_graph(&l.graph, out)
}

fn cmd_subdivide(
    input: &Path,
    edge: Option<usize>,
    times: usize,
    out: &GraphOut,
) -> Result<(), CliError> {
    let g = read_input(input)?;
    let result: MultiGraph = match edge {
        Some(e) => {
            subdivide_edge(&g, EdgeId(e), times)
                .map_err(CliError::usage)?
                .graph
        }
        None => subdivide_all(&g),
    };
    write_graph(&result, out)
}

fn cmd_pendant_fix(input: &Path, out: &GraphOut) -> Result<(), CliError> {
    let g = read_input(input)?;
    let (fixed, steps) = eliminate_pendants(&g).map_err(CliError::usage)?;
    let multi = steps
        .iter()
        .filter(|s| s.rule == PendantRule::MultiFixThenClaim1)
        .count();
    eprintln!(
        "{} pendant reductions ({multi} after a multi-pendant fix)",
        steps.len()
    );
    write_graph(&fixed, out)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(&args)?,
        Command::Count {
            input,
            algo,
            format,
            line,
            limits,
        } => cmd_count(&input, algo, format, line, limits)?,
        Command::Trace {
            input,
            check_steps,
            pendant_fix,
            out,
        } => cmd_trace(&input, check_steps, pendant_fix, out.as_deref())?,
        Command::Replay {
            trace,
            recount_up_to,
        } => cmd_replay(&trace, recount_up_to)?,
        Command::Verify {
            family,
            n,
            m,
            stage,
            algo,
            format,
            timings,
            limits,
        } => {
            let families = sweep::parse_families(&family)?;
            let specs = sweep::specs(
                &families,
                &parse_range(&n).map_err(CliError::Usage)?,
                &parse_range(&m).map_err(CliError::Usage)?,
                &parse_range(&stage).map_err(CliError::Usage)?,
            )?;
            let report = sweep::verify(&specs, algo, limits, timings);
            for row in &report.rows {
                if let Some(note) = &row.note {
                    eprintln!("{}: {note}", row.family);
                }
            }
            print_table(&report.rows, Some(&report.summary), format)?;
            eprintln!("{}", report.summary.line());
            return Ok(if report.summary.mismatch > 0 {
                ExitCode::from(1)
            } else if report.summary.capped > 0 {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            });
        }
        Command::Entropy {
            family,
            sizes,
            format,
            no_count,
            algo,
            limits,
        } => {
            let families = sweep::parse_families(&family)?;
            let sizes = parse_range(&sizes).map_err(CliError::Usage)?;
            let mut specs = Vec::new();
            for f in families {
                for &s in &sizes {
                    specs.extend(sweep::specs(&[f], &[s], &[s], &[s])?);
                }
            }
            let counter = (!no_count).then_some((algo, limits));
            let rows = sweep::entropy(&specs, counter)?;
            print_table(&rows, None, format)?;
        }
        Command::Linegraph {
            input,
            clique_inserted,
            recognize,
            origins,
            out,
        } => cmd_linegraph(&input, clique_inserted, recognize, origins, &out)?,
        Command::Subdivide {
            input,
            edge,
            times,
            all: _,
            out,
        } => cmd_subdivide(&input, edge, times, &out)?,
        Command::PendantFix { input, out } => cmd_pendant_fix(&input, &out)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
