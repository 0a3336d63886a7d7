//! `gridmeasure` — discrete measures, sweeps and dimension estimates on
//! finite grids, with CSV/JSON output.

mod commands;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{
    cmd_compare, cmd_dimension, cmd_lebesgue, cmd_measure, cmd_sweep, default_dimension_halo,
    default_schedule, load_spec, parse_delta_rule, parse_halo_rule, CliError, DeltaSpec,
    MeasureKind, SweepConfigFile, SweepPlan,
};
use gridmeasure::measure::{MeasureReport, SchedulePoint};

#[derive(Parser)]
#[command(
    name = "gridmeasure",
    version,
    about = "Discrete s-dimensional and Lebesgue measures on finite grids"
)]
struct Cli {
    /// Reserved for future randomized features; all computation is
    /// deterministic and this flag is ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    DiscreteH,
    ClassicalCover,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one measure report for a spec at a single (n, delta, s).
    Measure(MeasureArgs),
    /// Evaluate a grid of (n, delta, s) cells and write CSV/JSON rows.
    Sweep(SweepArgs),
    /// Estimate the dimension of a spec via the critical-exponent search.
    Dimension(DimensionArgs),
    /// Counting-based and box-counting dimension estimates side by side.
    Compare(CompareArgs),
    /// Lower and upper discrete Lebesgue bounds for a spec.
    Lebesgue(LebesgueArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Path to a SetSpec JSON file.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    s: f64,
    /// Fixed dilation halo in grid indices.
    #[arg(long, conflicts_with = "halo_rule")]
    halo: Option<u64>,
    /// Halo rule: sqrt_n (default) or fixed:<k>.
    #[arg(long)]
    halo_rule: Option<String>,
    #[arg(long, value_enum, default_value_t = KindArg::DiscreteH)]
    kind: KindArg,
    /// Breakpoint-grid resolution for the classical comparator.
    #[arg(long, default_value_t = 4096)]
    resolution: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to a SetSpec JSON file (overrides the config file's spec).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Sweep configuration JSON; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Grid scale; repeat for several scales.
    #[arg(long = "n")]
    scales: Vec<u64>,
    /// Piece bound; repeat for several deltas.
    #[arg(long = "delta")]
    deltas: Vec<f64>,
    /// Delta rule of the form n^<exponent>, e.g. n^-0.75.
    #[arg(long, conflicts_with = "deltas")]
    delta_rule: Option<String>,
    /// Exponent; repeat for several values.
    #[arg(long = "s")]
    s_values: Vec<f64>,
    #[arg(long, conflicts_with = "halo_rule")]
    halo: Option<u64>,
    #[arg(long)]
    halo_rule: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DimensionArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Comma-separated Cantor stages for the schedule, e.g. 5,6,7,8.
    #[arg(long)]
    stages: Option<String>,
    #[arg(long, conflicts_with = "halo_rule")]
    halo: Option<u64>,
    #[arg(long)]
    halo_rule: Option<String>,
    /// Estimation method: counting (default) or box.
    #[arg(long, default_value = "counting")]
    method: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Grid scale for the box-counting side; must be a multiple of 10^4.
    #[arg(long, default_value_t = 100_000_000)]
    n: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LebesgueArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    n: u64,
    #[arg(long, conflicts_with = "halo_rule")]
    halo: Option<u64>,
    #[arg(long)]
    halo_rule: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code.clamp(1, 255) as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure(args) => run_measure(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Dimension(args) => run_dimension(args),
        Command::Compare(args) => run_compare(args),
        Command::Lebesgue(args) => run_lebesgue(args),
    }
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_reports(
    reports: &[MeasureReport],
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => output::reports_to_csv(reports),
        Format::Json => output::reports_to_json(reports),
    };
    emit(text, out)
}

fn run_measure(args: MeasureArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let halo_rule = parse_halo_rule(args.halo, args.halo_rule.as_deref())?;
    let kind = match args.kind {
        KindArg::DiscreteH => MeasureKind::Discrete,
        KindArg::ClassicalCover => MeasureKind::Classical { resolution: args.resolution },
    };
    let report = cmd_measure(&spec, args.n, args.delta, args.s, halo_rule, kind)?;
    emit_reports(&[report], args.format, args.out.as_ref())
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file: SweepConfigFile = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::config(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::config(format!("bad config JSON in {}: {e}", path.display()))
            })?
        }
        None => SweepConfigFile::default(),
    };

    // CLI flags take precedence over config file fields.
    let spec = match &args.spec {
        Some(path) => load_spec(path)?,
        None => file
            .spec
            .clone()
            .ok_or_else(|| CliError::config("no spec: pass --spec or put one in --config"))?,
    };
    spec.validate().map_err(CliError::from)?;

    let scales = if args.scales.is_empty() { file.scales.clone() } else { args.scales.clone() };
    let deltas = if let Some(rule) = args.delta_rule.as_deref() {
        parse_delta_rule(rule)?
    } else if !args.deltas.is_empty() {
        DeltaSpec::List(args.deltas.clone())
    } else if let Some(rule) = file.delta_rule.as_deref() {
        parse_delta_rule(rule)?
    } else if !file.deltas.is_empty() {
        DeltaSpec::List(file.deltas.clone())
    } else {
        return Err(CliError::config("no deltas: pass --delta/--delta-rule or configure them"));
    };
    let s_values = if args.s_values.is_empty() { file.s_values.clone() } else { args.s_values.clone() };
    let halo_rule = if args.halo.is_some() || args.halo_rule.is_some() {
        parse_halo_rule(args.halo, args.halo_rule.as_deref())?
    } else {
        parse_halo_rule(None, file.halo_rule.as_deref())?
    };
    let format = args.format.unwrap_or(match file.format.as_deref() {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return Err(CliError::config(format!("unknown format {other:?}"))),
        None => Format::Csv,
    });
    let out = args
        .out
        .clone()
        .or_else(|| file.output_path.as_ref().map(PathBuf::from));

    let plan = SweepPlan { spec, scales, deltas, s_values, halo_rule };
    let rows = cmd_sweep(&plan)?;
    emit_reports(&rows, format, out.as_ref())
}

fn run_dimension(args: DimensionArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let halo = if args.halo.is_some() || args.halo_rule.is_some() {
        parse_halo_rule(args.halo, args.halo_rule.as_deref())?
    } else {
        default_dimension_halo(&spec)
    };
    let schedule: Vec<SchedulePoint> = match args.stages.as_deref() {
        Some(text) => {
            let stages: Vec<u32> = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::config(format!("bad stage {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            stage_schedule(&spec, &stages)?
        }
        None => default_schedule(&spec)?,
    };
    let report = cmd_dimension(&spec, &schedule, halo, &args.method)?;
    let mut text = serde_json::to_string_pretty(&report).expect("dimension output serializes");
    text.push('\n');
    emit(text, args.out.as_ref())
}

/// Stage-matched schedule at explicit stages (Cantor specs only).
fn stage_schedule(
    spec: &gridmeasure::SetSpec,
    stages: &[u32],
) -> Result<Vec<SchedulePoint>, CliError> {
    use gridmeasure::generators::SetVariant;
    let (num, den) = match &spec.variant {
        SetVariant::Cantor { lambda, .. } => gridmeasure::cantor_kept_ratio(*lambda)?,
        _ => return Err(CliError::config("--stages applies to cantor specs only")),
    };
    let ratio = num as f64 / den as f64;
    Ok(stages
        .iter()
        .map(|&m| {
            let n = den.pow(2 * m);
            SchedulePoint { n, delta: ratio.powi(m as i32) + 1.0 / n as f64, stage: m }
        })
        .collect())
}

fn run_compare(args: CompareArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let report = cmd_compare(&spec, args.n)?;
    let mut text = serde_json::to_string_pretty(&report).expect("compare output serializes");
    text.push('\n');
    emit(text, args.out.as_ref())
}

fn run_lebesgue(args: LebesgueArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let halo_rule = parse_halo_rule(args.halo, args.halo_rule.as_deref())?;
    let rows = cmd_lebesgue(&spec, args.n, halo_rule)?;
    emit_reports(&rows, args.format, args.out.as_ref())
}
