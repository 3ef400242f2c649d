use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nyqshape", version, about = "Nyquist pulse-shaping FIR design and analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design a filter and write its taps.
    Design(DesignArgs),
    /// Design a filter and write its frequency response and metrics.
    Analyze(AnalyzeArgs),
    /// Sweep roll-off, delay or oversampling and tabulate metrics.
    Sweep(SweepArgs),
    /// Compare all pulse families and tabulate the (D, M) tradeoff grid.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Parameter flags. Kept as raw strings so a config file can fill the gaps
/// and every value is range-checked in one place.
#[derive(Debug, Clone, Default, Args)]
pub struct SpecFlags {
    /// rc, rrc, fexp, fsech or farcsech.
    #[arg(long)]
    pub family: Option<String>,
    /// Roll-off factor in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Symbol rate in Hz.
    #[arg(long = "symbol-rate", allow_hyphen_values = true)]
    pub symbol_rate: Option<String>,
    /// Samples per symbol, M >= 2.
    #[arg(long, allow_hyphen_values = true)]
    pub oversample: Option<String>,
    /// Group delay in symbols, D >= 1.
    #[arg(long, allow_hyphen_values = true)]
    pub delay: Option<String>,
    /// dc, energy, peak-tap or peak-response.
    #[arg(long)]
    pub norm: Option<String>,
    /// frequency or time.
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct AnalysisFlags {
    /// Response grid points on [0, f_s/2].
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// Stopband threshold in dB (negative).
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputFlags {
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also write a JSON metadata file (parameters, version, timestamp).
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    /// alpha, delay, oversample-even or oversample-odd.
    #[arg(long)]
    pub axis: Option<String>,
    /// Comma-separated sweep values; defaults depend on the axis.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub analysis: AnalysisFlags,
    /// Family used for the (D, M) tradeoff grid; defaults to --family.
    #[arg(long = "tradeoff-family")]
    pub tradeoff_family: Option<String>,
    /// Separate file for the tradeoff grid.
    #[arg(long = "tradeoff-out")]
    pub tradeoff_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputFlags,
}
