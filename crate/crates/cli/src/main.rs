use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jantzen_core::jantzen::{analyze_at, RationalInterval};
use jantzen_core::spectrum::{prepare, render, write_outputs, PointReport, SpectrumError};
use jantzen_core::{sweep, Format, JantzenError, RationalPoint, SweepConfig};

#[derive(Parser)]
#[command(name = "jantzen", version, about = "Jantzen filtrations and unitary spectra of sl(2) families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the fiber at a single rational point.
    Analyze(AnalyzeArgs),
    /// Sweep a range of points and render a spectrum report.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Casimir as a rational function of z, e.g. "-(1+z)/z".
    #[arg(long, allow_hyphen_values = true)]
    casimir: String,
    /// The point x, as p, p/q or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    at: RationalPoint,
    /// Even window bound W; weights run over -W..W.
    #[arg(long, default_value_t = SweepConfig::DEFAULT_WINDOW)]
    window: i64,
    /// Print the point report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    casimir: String,
    /// Closed range A B of x values.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    range: Option<Vec<RationalPoint>>,
    /// Number of evenly spaced grid points (at least 2).
    #[arg(long, default_value_t = SweepConfig::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_WINDOW)]
    window: i64,
    /// Output format; repeat for several.
    #[arg(long = "format", default_value = "json")]
    formats: Vec<Format>,
    /// Output file, or file stem when several formats are requested.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_validation() { 2 } else { 1 })
        }
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), SpectrumError> {
    let (c, family, phi) = prepare(&args.casimir, args.window)?;
    let analysis = analyze_at(&family, &phi, &args.at)?;
    let report = PointReport::from_analysis(&analysis, !analysis.is_trivial())?;
    let mut out = String::new();
    if args.json {
        out = serde_json::to_string_pretty(&report)?;
        out.push('\n');
    } else {
        out.push_str(&format!("c(z) = {c}\n"));
        out.push_str(&format!("x = {}  ({})\n", report.x, analysis.real_form().group_name()));
        match analysis.casimir_value() {
            Some(v) => out.push_str(&format!("c(x) = {v}\n")),
            None => out.push_str("c(x) = pole\n"),
        }
        out.push_str(&format!("window = {}\n", args.window));
        for layer in &report.layers {
            out.push_str(&format!("level {}: {}", layer.level, layer.verdict));
            if let Some(label) = &layer.label {
                out.push_str(&format!(" ({label})"));
            }
            out.push('\n');
            for (k, v) in layer.weights.iter().zip(&layer.form_values) {
                out.push_str(&format!("  k = {k:>4}  form = {v}\n"));
            }
        }
    }
    emit(&out)
}

fn run_sweep(args: SweepArgs) -> Result<(), SpectrumError> {
    let mut config = SweepConfig::new(args.casimir).with_window(args.window).with_grid(args.grid);
    if let Some(range) = args.range {
        let [lo, hi]: [RationalPoint; 2] = range.try_into().expect("clap enforces two values");
        config = config.with_range(RationalInterval::new(lo, hi).map_err(invalid_range)?);
    }
    let mut formats = args.formats;
    formats.dedup();
    let report = sweep(&config)?;
    match args.out {
        Some(out) => {
            for path in write_outputs(&report, &formats, &out)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        None => {
            for &format in &formats {
                emit(&render(&report, format))?;
            }
            Ok(())
        }
    }
}

fn invalid_range(err: JantzenError) -> SpectrumError {
    SpectrumError::InvalidRange(err.to_string())
}

fn emit(text: &str) -> Result<(), SpectrumError> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|source| SpectrumError::Io { path: PathBuf::from("<stdout>"), source })
}
