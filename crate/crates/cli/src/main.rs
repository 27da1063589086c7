//! Command-line driver: decompose majorities into `M_k` networks, sweep
//! gate counts against bounds, verify serialized netlists, and query
//! partition counts.
//!
//! Exit codes: 0 success (and equivalence verified where requested),
//! 1 usage or runtime error, 2 verification found a mismatch.

mod dot;
mod json;

use clap::{Args, Parser, Subcommand, ValueEnum};
use majdec::{
    check_network_equivalence, check_threshold_equivalence, count_partitions, count_restricted,
    count_restricted_set, csv_row, enumerate_restricted_set, fold_constants, group_inputs,
    homogenize, lower_bound_ref, lower_counters, partition_bound_ref, render_csv, sweep,
    upper_bound_counter, BoundReport, LogicNetwork, Method, PartitionConstraint, SampledConfig,
    VerificationReport, VerifyMode, CSV_HEADER,
};
use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

type AppResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "majdec",
    version,
    about = "Decompose n-input majority/threshold functions into k-input majority gate networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize M_n over M_k gates and emit the network
    Decompose(DecomposeArgs),
    /// Measure decompositions against bounds over an (n, k) grid, as CSV
    Sweep(SweepArgs),
    /// Check a JSON netlist against the popcount oracle or a second netlist
    Verify(VerifyArgs),
    /// Partition-counting utilities
    Partition {
        #[command(subcommand)]
        query: PartitionQuery,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dot,
    Json,
    Stats,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    /// The synthesized network, counters still in place
    Counters,
    /// Lowered to M_k gates and homogenized
    Maj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyChoice {
    None,
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Number of inputs (odd)
    #[arg(long)]
    n: usize,
    /// Gate fan-in (odd, at least 3)
    #[arg(long)]
    k: usize,
    /// Synthesis method: counter | partition
    #[arg(long, default_value = "counter")]
    method: Method,
    /// Artifact format
    #[arg(long, value_enum, default_value_t = Emit::Stats)]
    emit: Emit,
    /// How far to run the pipeline before emitting
    #[arg(long, value_enum, default_value_t = Stage::Maj)]
    stage: Stage,
    /// Fold constants before emitting
    #[arg(long)]
    fold: bool,
    /// Disable structural hashing (emit the raw construction)
    #[arg(long)]
    no_hash: bool,
    /// Equivalence check against the popcount oracle
    #[arg(long, value_enum, default_value_t = VerifyChoice::None)]
    verify: VerifyChoice,
    /// Seed for sampled verification
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the artifact to this file (stats then go to standard output)
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Odd n values for a sweep: "lo..hi" (inclusive, odds within) or one odd value.
#[derive(Clone)]
struct OddValues(Vec<usize>);

fn parse_odd_values(text: &str) -> Result<OddValues, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad range start '{lo}'"))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad range end '{hi}'"))?;
        let start = if lo.is_multiple_of(2) { lo + 1 } else { lo };
        let values: Vec<usize> = (start..=hi).step_by(2).collect();
        if values.is_empty() {
            return Err(format!("range {lo}..{hi} contains no odd values"));
        }
        Ok(OddValues(values))
    } else {
        let n: usize = text
            .trim()
            .parse()
            .map_err(|_| format!("bad value '{text}'"))?;
        if n.is_multiple_of(2) {
            return Err(format!("n must be odd, got {n}"));
        }
        Ok(OddValues(vec![n]))
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Input counts: an inclusive range "5..511" (odd values) or one odd value
    #[arg(long, value_parser = parse_odd_values)]
    n: OddValues,
    /// Comma-separated fan-ins
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// Synthesis method: counter | partition
    #[arg(long, default_value = "counter")]
    method: Method,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON netlist to check
    #[arg(long)]
    input: PathBuf,
    /// Optional second netlist; check the two for equivalence instead
    #[arg(long)]
    against: Option<PathBuf>,
    /// Threshold t for the popcount oracle (default: majority of meta.n)
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Seed for sampled mode
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum PartitionQuery {
    /// p(n): number of integer partitions of n
    P { n: usize },
    /// p_r(N, M, n): partitions of n with at most M parts, each at most N
    Pr {
        max_part: usize,
        max_parts: usize,
        n: usize,
    },
    /// p_rs(N, M, n): partitions of every sum in [n, N*M] under the box
    Prs {
        max_part: usize,
        max_parts: usize,
        n: usize,
    },
    /// List the partitions with sum at least min, one "a+b+c" per line
    Enum {
        #[arg(long = "N")]
        max_part: usize,
        #[arg(long = "M")]
        max_parts: usize,
        #[arg(long)]
        min: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems exit 1; --help/--version are not errors.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decompose(args) => run_decompose(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
        Command::Partition { query } => run_partition(query),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn bound_report(net: &LogicNetwork, n: usize, k: usize, method: Method) -> AppReport {
    Ok(BoundReport {
        n,
        k,
        method,
        upper_bound_counter: upper_bound_counter(n, k).ok(),
        lower_bound_ref: lower_bound_ref(n, k),
        partition_bound_ref: partition_bound_ref(n, k),
        num_groups: group_inputs(n, k)?.len(),
        measured: net.stats(),
    })
}

type AppReport = Result<BoundReport, Box<dyn Error>>;

fn format_counterexample(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn describe(report: &VerificationReport) -> String {
    let seed = match report.seed {
        Some(seed) => format!(", seed {seed}"),
        None => String::new(),
    };
    format!(
        "equivalent: {} ({} mode, {} vectors{seed})",
        report.equivalent, report.mode, report.vectors_checked
    )
}

fn run_decompose(args: DecomposeArgs) -> AppResult {
    let mut net = args.method.synthesize(args.n, args.k)?;
    if args.no_hash {
        net = net.with_hashing(false);
    }
    if args.stage == Stage::Maj {
        net = homogenize(&lower_counters(&net, args.k)?, args.k)?;
    }
    if args.fold {
        net = fold_constants(&net);
    }

    let mut verdict = None;
    if args.verify != VerifyChoice::None {
        let t = args.n.div_ceil(2);
        let mode = match args.verify {
            VerifyChoice::Exhaustive => VerifyMode::Exhaustive,
            _ => VerifyMode::Sampled(SampledConfig::with_seed(args.seed)),
        };
        let report = check_threshold_equivalence(&net, t, mode)?;
        if !report.equivalent {
            eprintln!(
                "verification FAILED against popcount >= {t}: counterexample {}",
                format_counterexample(&report.counterexample.unwrap_or_default())
            );
            return Ok(ExitCode::from(2));
        }
        verdict = Some(format!(
            "verified against popcount >= {t}: {}",
            describe(&report)
        ));
    }

    let report = bound_report(&net, args.n, args.k, args.method)?;
    let mut stats = report.to_string();
    stats.push('\n');
    if let Some(verdict) = verdict {
        stats.push_str(&verdict);
        stats.push('\n');
    }

    let artifact = match args.emit {
        Emit::Dot => Some(dot::to_dot(&net)),
        Emit::Json => Some(json::to_json(
            &net,
            json::Meta {
                n: args.n,
                k: args.k,
                method: args.method.name().to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        )),
        Emit::Csv => Some(format!("{CSV_HEADER}\n{}\n", csv_row(&report))),
        Emit::Stats => None,
    };

    // The artifact owns standard output unless redirected to a file; stats
    // then use the remaining stream so the artifact stays machine-readable.
    match (artifact, &args.output) {
        (Some(text), Some(path)) => {
            fs::write(path, text)?;
            print!("{stats}");
        }
        (Some(text), None) => {
            print!("{text}");
            eprint!("{stats}");
        }
        (None, Some(path)) => fs::write(path, stats)?,
        (None, None) => print!("{stats}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(args: SweepArgs) -> AppResult {
    let rows = sweep(&args.n.0, &args.k, args.method);
    for row in &rows {
        if let Err(err) = &row.result {
            eprintln!("sweep: n={} k={}: {err}", row.n, row.k);
        }
    }
    let csv = render_csv(&rows);
    match &args.output {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> AppResult {
    let (net, meta) = json::from_json(&fs::read_to_string(&args.input)?)?;
    let mode = match args.mode {
        Mode::Exhaustive => VerifyMode::Exhaustive,
        Mode::Sampled => VerifyMode::Sampled(SampledConfig::with_seed(args.seed)),
    };
    let report = match &args.against {
        Some(path) => {
            let (other, _) = json::from_json(&fs::read_to_string(path)?)?;
            check_network_equivalence(&net, &other, mode)?
        }
        None => {
            let t = args.t.unwrap_or(meta.n.div_ceil(2));
            check_threshold_equivalence(&net, t, mode)?
        }
    };
    println!("{}", describe(&report));
    if let Some(cex) = &report.counterexample {
        println!("counterexample: {}", format_counterexample(cex));
    }
    Ok(if report.equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn box_constraint(
    max_part: usize,
    max_parts: usize,
) -> Result<PartitionConstraint, Box<dyn Error>> {
    if max_part < 1 || max_parts < 1 {
        return Err("N and M must be at least 1".into());
    }
    Ok(PartitionConstraint::new(max_part, max_parts))
}

fn run_partition(query: PartitionQuery) -> AppResult {
    match query {
        PartitionQuery::P { n } => println!("{}", count_partitions(n)),
        PartitionQuery::Pr {
            max_part,
            max_parts,
            n,
        } => println!(
            "{}",
            count_restricted(&box_constraint(max_part, max_parts)?, n)
        ),
        PartitionQuery::Prs {
            max_part,
            max_parts,
            n,
        } => println!(
            "{}",
            count_restricted_set(&box_constraint(max_part, max_parts)?, n)
        ),
        PartitionQuery::Enum {
            max_part,
            max_parts,
            min,
        } => {
            for partition in enumerate_restricted_set(&box_constraint(max_part, max_parts)?, min) {
                println!("{partition}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
