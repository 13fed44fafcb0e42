//! Command-line front end for the drqsim scheduling simulator.
//!
//! Subcommands: `simulate` one dataset under one policy, `compare` two
//! policies across datasets, `generate` reproducible random workloads, and
//! `reproduce` the bundled worked example with a published-value checklist.
//!
//! Exit codes: 0 success, 1 usage/parse/validation error, 2 I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use num_traits::Signed;

use drqsim::engine::simulate;
use drqsim::metrics::{compute_metrics, format_fixed2, Rational, SimResult};
use drqsim::oracle::tick_simulate;
use drqsim::policies::{DrqMode, DrqParams, PolicyConfig, TrqMode};
use drqsim::report::{
    comparison_table, export_result, render_comparison, render_gantt, GanttStyle, ReportFormat,
};
use drqsim::workload::{Workload, WorkloadFormat, BUNDLED_IDS};

#[derive(Parser)]
#[command(
    name = "drqsim",
    version,
    about = "Deterministic CPU-scheduling simulator: fcfs, round robin, and a \
             dynamic-quantum ready-queue-priority variant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one dataset under one policy and export the result
    Simulate(SimulateArgs),
    /// Simulate datasets under two policies and tabulate the improvement
    Compare(CompareArgs),
    /// Generate a reproducible random workload
    Generate(GenerateArgs),
    /// Run the bundled worked example and check the published values
    Reproduce,
}

#[derive(Args)]
struct SimulateArgs {
    /// Dataset: a bundled id (table1, ds1..ds10) or a path to a .csv/.json file
    #[arg(long)]
    dataset: String,

    /// Policy: fcfs | srr | drq, with optional colon parameters (e.g. srr:3,
    /// drq:online:measured)
    #[arg(long)]
    policy: String,

    /// Fixed quantum for srr (alternative to the srr:N shorthand)
    #[arg(long)]
    quantum: Option<u64>,

    /// Finish-early threshold for drq, as a decimal or fraction [default: 0.04]
    #[arg(long)]
    threshold: Option<String>,

    /// Round planning scope for drq [default: offline]
    #[arg(long, value_enum)]
    drq_mode: Option<DrqModeArg>,

    /// Ready-queue wait bookkeeping for drq [default: formula]
    #[arg(long, value_enum)]
    trq_mode: Option<TrqModeArg>,

    /// Output document format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Additionally render a Gantt chart
    #[arg(long, value_enum)]
    gantt: Option<GanttArg>,

    /// Write the Gantt chart here instead of standard output
    #[arg(long, value_name = "PATH")]
    gantt_output: Option<PathBuf>,

    /// Write the result here instead of standard output
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = EngineArg::Segment, hide = true)]
    engine: EngineArg,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated datasets: bundled ids, ranges like ds1..ds10, or paths
    #[arg(long, value_delimiter = ',', required = true)]
    datasets: Vec<String>,

    /// Baseline policy spec (e.g. srr:3)
    #[arg(long)]
    base: String,

    /// Candidate policy spec (e.g. drq)
    #[arg(long)]
    candidate: String,

    /// Output document format
    #[arg(long, value_enum, default_value_t = FormatArg::Markdown)]
    format: FormatArg,

    /// Write the report here instead of standard output
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of processes
    #[arg(long)]
    count: u64,

    /// RNG seed; identical seeds give identical workloads
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest arrival time [default: 2 * count]
    #[arg(long)]
    arrival_max: Option<u64>,

    /// Largest burst time
    #[arg(long, default_value_t = drqsim::workload::DEFAULT_BURST_MAX)]
    burst_max: u64,

    /// Output format; inferred from the output extension when omitted
    #[arg(long, value_enum)]
    format: Option<WorkloadFormatArg>,

    /// Write the workload here instead of standard output
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Markdown => ReportFormat::Markdown,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WorkloadFormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GanttArg {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DrqModeArg {
    Offline,
    Online,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TrqModeArg {
    Formula,
    Measured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Segment,
    Tick,
}

/// Failures sorted by exit code: usage/validation errors exit 1, I/O exits 2.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self::Usage(message.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Reproduce => cmd_reproduce(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Io(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let policy = build_policy(
        &args.policy,
        args.quantum,
        args.threshold.as_deref(),
        args.drq_mode,
        args.trq_mode,
    )?;
    let (label, workload) = load_dataset(&args.dataset)?;
    let schedule = match args.engine {
        EngineArg::Segment => simulate(&workload, &policy).0,
        EngineArg::Tick => tick_simulate(&workload, &policy),
    };
    let result = compute_metrics(&workload, schedule);
    let document = export_result(&result, &policy.to_string(), &label, args.format.into());
    write_output(args.output.as_deref(), &document)?;
    if let Some(style) = args.gantt {
        let style = match style {
            GanttArg::Ascii => GanttStyle::Ascii,
            GanttArg::Svg => GanttStyle::Svg,
        };
        let chart = render_gantt(&result.schedule, style);
        write_output(args.gantt_output.as_deref(), &chart)?;
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let base = parse_policy_spec(&args.base)?;
    let candidate = parse_policy_spec(&args.candidate)?;
    let mut datasets = Vec::new();
    for token in expand_dataset_tokens(&args.datasets)? {
        datasets.push(load_dataset(&token)?);
    }
    let report = comparison_table(&datasets, &base, &candidate)
        .map_err(|err| CliError::usage(err.to_string()))?;
    write_output(
        args.output.as_deref(),
        &render_comparison(&report, args.format.into()),
    )
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let arrival_max = args
        .arrival_max
        .unwrap_or_else(|| drqsim::workload::default_arrival_max(args.count));
    let workload = Workload::generate(args.count, args.seed, arrival_max, args.burst_max)
        .map_err(|err| CliError::usage(err.to_string()))?;
    let format = args.format.unwrap_or_else(|| {
        match args.output.as_deref().and_then(Path::extension) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => WorkloadFormatArg::Json,
            _ => WorkloadFormatArg::Csv,
        }
    });
    let text = match format {
        WorkloadFormatArg::Csv => workload.to_csv(),
        WorkloadFormatArg::Json => workload.to_json(),
    };
    write_output(args.output.as_deref(), &text)
}

/// Reference values published for the worked example; `reproduce` recomputes
/// everything and marks each line MATCHES-PAPER or DIVERGES.
mod published {
    pub const SRR_WAITS: [u64; 6] = [19, 17, 23, 22, 2, 9];
    pub const SRR_AVG_WT: (i64, i64) = (1534, 100);
    pub const SRR_AVG_TAT: (i64, i64) = (2067, 100);
    pub const SRR_NCS: u64 = 13;
    pub const DRQ_QUANTA: [u64; 2] = [6, 3];
    pub const DRQ_SURVIVORS: [(&str, u64); 2] = [("P3", 1), ("P4", 3)];
    pub const DRQ_NCS: u64 = 9;
    pub const DRQ_WAITS: [u64; 6] = [7, 14, 23, 0, 30, 10];
    pub const DRQ_AVG_WT: (i64, i64) = (1284, 100);
    pub const DRQ_AVG_TAT: (i64, i64) = (1817, 100);
}

fn cmd_reproduce() -> Result<(), CliError> {
    let workload = Workload::table1();
    let tolerance = Rational::new(1, 100);
    let ratio = |(n, d): (i64, i64)| Rational::new(n, d);
    let verdict = |matches: bool, note: &str| {
        if matches {
            format!("MATCHES-PAPER ({note})")
        } else {
            format!("DIVERGES ({note})")
        }
    };
    let waits_of =
        |result: &SimResult| -> Vec<u64> { result.per_process.iter().map(|m| m.waiting).collect() };
    let csv = |values: &[u64]| {
        values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };

    // Standard round robin side.
    let srr_policy = PolicyConfig::Srr { quantum: 3 };
    let (srr_schedule, _) = simulate(&workload, &srr_policy);
    let srr = compute_metrics(&workload, srr_schedule);
    println!("== table1 under {srr_policy} ==");
    print!("{}", render_gantt(&srr.schedule, GanttStyle::Ascii));
    println!();

    let waits = waits_of(&srr);
    println!(
        "per-process waiting   {}   {}",
        csv(&waits),
        verdict(
            waits == published::SRR_WAITS,
            &format!("published: {}", csv(&published::SRR_WAITS)),
        )
    );
    let avg_wt_close =
        (srr.aggregates.avg_waiting - ratio(published::SRR_AVG_WT)).abs() <= tolerance;
    println!(
        "average waiting       {}   {}",
        format_fixed2(srr.aggregates.avg_waiting),
        verdict(
            avg_wt_close,
            "published 15.34 rounds 92/6 upward; equal within 0.01",
        )
    );
    let avg_tat_close =
        (srr.aggregates.avg_turnaround - ratio(published::SRR_AVG_TAT)).abs() <= tolerance;
    println!(
        "average turnaround    {}   {}",
        format_fixed2(srr.aggregates.avg_turnaround),
        verdict(avg_tat_close, "published: 20.67")
    );
    println!(
        "context switches      {}   {}",
        srr.aggregates.ncs,
        verdict(
            srr.aggregates.ncs == published::SRR_NCS,
            &format!("published: {}", published::SRR_NCS),
        )
    );
    println!();

    // Dynamic-quantum side.
    let drq_policy = PolicyConfig::drq_default();
    let (drq_schedule, trace) = simulate(&workload, &drq_policy);
    let drq = compute_metrics(&workload, drq_schedule);
    println!("== table1 under {drq_policy} ==");
    print!("{}", render_gantt(&drq.schedule, GanttStyle::Ascii));
    println!();

    let quanta: Vec<u64> = trace.rounds.iter().filter_map(|r| r.quantum).collect();
    println!(
        "round quanta          {}   {}",
        csv(&quanta),
        verdict(
            quanta == published::DRQ_QUANTA,
            &format!("published cycle quanta: {}", csv(&published::DRQ_QUANTA)),
        )
    );
    let survivors: Vec<(String, u64)> = trace
        .rounds
        .get(1)
        .map(|round| {
            round
                .dispatches
                .iter()
                .map(|d| (d.id.clone(), d.remaining_before))
                .collect()
        })
        .unwrap_or_default();
    let survivors_text = survivors
        .iter()
        .map(|(id, rbt)| format!("{id}={rbt}"))
        .collect::<Vec<_>>()
        .join(",");
    let survivors_match = survivors
        .iter()
        .map(|(id, rbt)| (id.as_str(), *rbt))
        .eq(published::DRQ_SURVIVORS);
    println!(
        "round-2 remainders    {}   {}",
        survivors_text,
        verdict(survivors_match, "published: P3=1,P4=3")
    );
    println!(
        "context switches      {}   {}",
        drq.aggregates.ncs,
        verdict(
            drq.aggregates.ncs == published::DRQ_NCS,
            &format!("published: {}", published::DRQ_NCS),
        )
    );
    let waits = waits_of(&drq);
    println!(
        "per-process waiting   {}   {}",
        csv(&waits),
        verdict(
            waits == published::DRQ_WAITS,
            &format!(
                "published {} conflicts with its own stated average",
                csv(&published::DRQ_WAITS),
            )
        )
    );
    let avg_wt_close =
        (drq.aggregates.avg_waiting - ratio(published::DRQ_AVG_WT)).abs() <= tolerance;
    println!(
        "average waiting       {}   {}",
        format_fixed2(drq.aggregates.avg_waiting),
        verdict(
            avg_wt_close,
            "published 12.84 is not an integer-schedule average (x6 = 77.04), and the \
             published per-process list averages 14.00",
        )
    );
    let avg_tat_close =
        (drq.aggregates.avg_turnaround - ratio(published::DRQ_AVG_TAT)).abs() <= tolerance;
    println!(
        "average turnaround    {}   {}",
        format_fixed2(drq.aggregates.avg_turnaround),
        verdict(avg_tat_close, "published: 18.17")
    );
    Ok(())
}

/// Parses a policy spec: `fcfs`, `srr[:quantum]`, or
/// `drq[:offline|online][:formula|measured][:t=N/D]`.
fn parse_policy_spec(spec: &str) -> Result<PolicyConfig, CliError> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    let rest: Vec<&str> = parts.collect();
    match kind {
        "fcfs" => {
            if !rest.is_empty() {
                return Err(CliError::usage(format!("fcfs takes no parameters: `{spec}`")));
            }
            Ok(PolicyConfig::Fcfs)
        }
        "srr" => match rest.as_slice() {
            [] => Err(CliError::usage(
                "srr requires a quantum: use srr:N or --quantum N",
            )),
            [quantum] => {
                let quantum: u64 = quantum
                    .parse()
                    .map_err(|_| CliError::usage(format!("invalid srr quantum `{quantum}`")))?;
                let config = PolicyConfig::Srr { quantum };
                config
                    .validate()
                    .map_err(|err| CliError::usage(err.to_string()))?;
                Ok(config)
            }
            _ => Err(CliError::usage(format!("too many srr parameters: `{spec}`"))),
        },
        "drq" => {
            let mut params = DrqParams::default();
            for token in rest {
                match token {
                    "offline" => params.mode = DrqMode::Offline,
                    "online" => params.mode = DrqMode::Online,
                    "formula" => params.trq_mode = TrqMode::Formula,
                    "measured" => params.trq_mode = TrqMode::Measured,
                    other => {
                        let text = other.strip_prefix("t=").unwrap_or(other);
                        params.threshold = parse_fraction(text)?;
                    }
                }
            }
            let config = PolicyConfig::Drq(params);
            config
                .validate()
                .map_err(|err| CliError::usage(err.to_string()))?;
            Ok(config)
        }
        other => Err(CliError::usage(format!(
            "unknown policy `{other}` (expected fcfs, srr, or drq)"
        ))),
    }
}

/// Combines a `--policy` spec with the standalone parameter flags, rejecting
/// contradictions between the two spellings.
fn build_policy(
    spec: &str,
    quantum: Option<u64>,
    threshold: Option<&str>,
    drq_mode: Option<DrqModeArg>,
    trq_mode: Option<TrqModeArg>,
) -> Result<PolicyConfig, CliError> {
    // `srr` alone is valid here when --quantum supplies the value.
    let parsed = match (spec, quantum) {
        ("srr", Some(quantum)) => PolicyConfig::Srr { quantum },
        _ => parse_policy_spec(spec)?,
    };
    let config = match parsed {
        PolicyConfig::Fcfs => {
            if quantum.is_some() || threshold.is_some() || drq_mode.is_some() || trq_mode.is_some()
            {
                return Err(CliError::usage("fcfs takes no policy parameters"));
            }
            PolicyConfig::Fcfs
        }
        PolicyConfig::Srr { quantum: from_spec } => {
            if threshold.is_some() || drq_mode.is_some() || trq_mode.is_some() {
                return Err(CliError::usage(
                    "--threshold/--drq-mode/--trq-mode only apply to drq",
                ));
            }
            match quantum {
                Some(q) if q != from_spec => {
                    return Err(CliError::usage(format!(
                        "conflicting quanta: spec says {from_spec}, --quantum says {q}"
                    )));
                }
                _ => PolicyConfig::Srr { quantum: from_spec },
            }
        }
        PolicyConfig::Drq(mut params) => {
            if quantum.is_some() {
                return Err(CliError::usage("--quantum only applies to srr"));
            }
            if let Some(text) = threshold {
                params.threshold = parse_fraction(text)?;
            }
            if let Some(mode) = drq_mode {
                params.mode = match mode {
                    DrqModeArg::Offline => DrqMode::Offline,
                    DrqModeArg::Online => DrqMode::Online,
                };
            }
            if let Some(mode) = trq_mode {
                params.trq_mode = match mode {
                    TrqModeArg::Formula => TrqMode::Formula,
                    TrqModeArg::Measured => TrqMode::Measured,
                };
            }
            PolicyConfig::Drq(params)
        }
    };
    config
        .validate()
        .map_err(|err| CliError::usage(err.to_string()))?;
    Ok(config)
}

/// Parses `N/D` fractions and plain decimals like `0.04` into an exact ratio.
fn parse_fraction(text: &str) -> Result<Ratio<u64>, CliError> {
    let invalid = || CliError::usage(format!("invalid fraction `{text}`"));
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: u64 = numer.trim().parse().map_err(|_| invalid())?;
        let denom: u64 = denom.trim().parse().map_err(|_| invalid())?;
        if denom == 0 {
            return Err(invalid());
        }
        return Ok(Ratio::new(numer, denom));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| invalid())?
        };
        let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(invalid)?;
        let frac: u64 = frac.parse().map_err(|_| invalid())?;
        let numer = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(invalid)?;
        return Ok(Ratio::new(numer, scale));
    }
    let int: u64 = text.parse().map_err(|_| invalid())?;
    Ok(Ratio::from_integer(int))
}

/// Expands comma-separated dataset tokens, including `dsN..dsM` ranges.
fn expand_dataset_tokens(tokens: &[String]) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for token in tokens {
        if let Some((lo, hi)) = token.split_once("..") {
            let parse = |side: &str| {
                side.strip_prefix("ds")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| CliError::usage(format!("invalid dataset range `{token}`")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(CliError::usage(format!("empty dataset range `{token}`")));
            }
            for n in lo..=hi {
                out.push(format!("ds{n}"));
            }
        } else {
            out.push(token.clone());
        }
    }
    Ok(out)
}

/// Resolves a dataset token to a (label, workload) pair: bundled ids load
/// from the library, anything else is treated as a file path.
fn load_dataset(token: &str) -> Result<(String, Workload), CliError> {
    if BUNDLED_IDS.contains(&token) {
        let workload = Workload::bundled(token).map_err(|err| CliError::usage(err.to_string()))?;
        return Ok((token.to_string(), workload));
    }
    let path = Path::new(token);
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Io(format!("cannot read `{token}`: {err}")))?;
    let format = match path.extension() {
        Some(ext) if ext.eq_ignore_ascii_case("json") => WorkloadFormat::Json,
        _ => WorkloadFormat::Csv,
    };
    let workload = Workload::parse(&text, format)
        .map_err(|err| CliError::usage(format!("`{token}`: {err}")))?;
    Ok((token.to_string(), workload))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|err| CliError::Io(format!("cannot write `{}`: {err}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
