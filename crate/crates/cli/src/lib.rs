//! Command-line front end for `nyqshape`: design, analyze, sweep and
//! compare Nyquist pulse-shaping filters, writing CSV or JSON.

pub mod args;
pub mod config;
pub mod error;
pub mod formats;
pub mod output;
pub mod parallel;

use std::ffi::OsString;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use nyqshape::{design, frequency_response, isi_report, spectral_metrics, DesignMethod, DesignSpec};
use serde::Serialize;

use args::{AnalyzeArgs, Cli, Command, CompareArgs, DesignArgs, Format, SweepArgs};
use config::ConfigFile;
pub use error::{CliError, Result};
use formats::SpecDoc;
use output::Outputs;

/// Runs the tool on `argv` (program name first) and returns the exit code:
/// 0 on success, 2 for invalid arguments, 1 for numerical or I/O failures.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Design(a) => cmd_design(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    created_unix_s: u64,
    parameters: SpecDoc,
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<serde_json::Value>,
}

fn add_meta(
    outputs: &mut Outputs,
    path: Option<&Path>,
    command: &'static str,
    spec: &DesignSpec,
    method: DesignMethod,
    extra: Option<serde_json::Value>,
) {
    let Some(path) = path else { return };
    let created_unix_s = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = Meta {
        tool: "nyqshape",
        version: env!("CARGO_PKG_VERSION"),
        command,
        created_unix_s,
        parameters: SpecDoc::new(spec, method),
        outputs: outputs.paths().map(|p| p.display().to_string()).collect(),
        extra,
    };
    let mut text = serde_json::to_string_pretty(&meta).expect("plain data always serializes");
    text.push('\n');
    outputs.add(path, text);
}

fn cmd_design(a: DesignArgs) -> Result<()> {
    let cfg = ConfigFile::load(a.output.config.as_deref())?;
    let (spec, method) = config::resolve_spec(&a.spec, &cfg)?;
    let format = config::resolve_format(a.output.format, &cfg)?;
    let filter = design(&spec, method)?;
    let mut out = Outputs::default();
    out.add(
        &a.output.out,
        match format {
            Format::Csv => formats::taps_csv(filter.taps()),
            Format::Json => formats::taps_json(&filter, &spec, method),
        },
    );
    add_meta(&mut out, a.output.meta.as_deref(), "design", &spec, method, None);
    out.commit()
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let cfg = ConfigFile::load(a.output.config.as_deref())?;
    let (spec, method) = config::resolve_spec(&a.spec, &cfg)?;
    let settings = config::resolve_analysis(&a.analysis, &cfg, method)?;
    let format = config::resolve_format(a.output.format, &cfg)?;
    let filter = design(&spec, method)?;
    let grid = frequency_response(&filter, settings.grid_points, filter.sample_rate_hz() / 2.0)?;
    let metrics = spectral_metrics(&grid, settings.stop_threshold_db)?;
    let isi = isi_report(&filter)?;
    let mut out = Outputs::default();
    out.add(
        &a.output.out,
        match format {
            Format::Csv => formats::response_csv(&grid),
            Format::Json => formats::analysis_json(&spec, method, &grid, &metrics, &isi),
        },
    );
    let extra = serde_json::json!({
        "points": settings.grid_points,
        "threshold_db": settings.stop_threshold_db,
        "main_lobe_edge_hz": metrics.main_lobe_edge_hz,
        "stopband_start_hz": metrics.stopband_start_hz,
        "peak_sidelobe_db": metrics.peak_sidelobe_db,
        "passband_ripple_db": metrics.passband_ripple_db,
        "peak_distortion": isi.peak_distortion,
        "rms_distortion": isi.rms_distortion,
    });
    add_meta(&mut out, a.output.meta.as_deref(), "analyze", &spec, method, Some(extra));
    out.commit()?;
    let sidelobe = metrics
        .peak_sidelobe_db
        .map_or_else(|| "none".to_string(), |v| format!("{v:.2} dB"));
    println!(
        "main lobe edge {:.0} Hz, stopband from {:.0} Hz, peak sidelobe {sidelobe}, \
         passband ripple {:.3e} dB, peak ISI {:.3e}",
        metrics.main_lobe_edge_hz, metrics.stopband_start_hz, metrics.passband_ripple_db, isi.peak_distortion
    );
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let cfg = ConfigFile::load(a.output.config.as_deref())?;
    let (spec, method) = config::resolve_spec(&a.spec, &cfg)?;
    let settings = config::resolve_analysis(&a.analysis, &cfg, method)?;
    let format = config::resolve_format(a.output.format, &cfg)?;
    let axis = config::resolve_axis(&a.axis, &cfg)?;
    let values = config::resolve_values(&a.values, &cfg, axis)?;
    let threads = parallel::threads_from_env()?;
    let report = parallel::sweep(axis, &spec, &values, &settings, threads)?;
    let mut out = Outputs::default();
    out.add(
        &a.output.out,
        match format {
            Format::Csv => formats::sweep_csv(&report),
            Format::Json => formats::sweep_json(&report, method),
        },
    );
    let extra = serde_json::json!({
        "axis": axis.name(),
        "values": values,
        "points": settings.grid_points,
        "threshold_db": settings.stop_threshold_db,
    });
    add_meta(&mut out, a.output.meta.as_deref(), "sweep", &spec, method, Some(extra));
    out.commit()
}

fn cmd_compare(a: CompareArgs) -> Result<()> {
    let cfg = ConfigFile::load(a.output.config.as_deref())?;
    let (spec, method) = config::resolve_spec(&a.spec, &cfg)?;
    let settings = config::resolve_analysis(&a.analysis, &cfg, method)?;
    let format = config::resolve_format(a.output.format, &cfg)?;
    let tradeoff_family = config::resolve_tradeoff_family(&a.tradeoff_family, &cfg, spec.family)?;
    let threads = parallel::threads_from_env()?;
    let cmp = parallel::comparison(&spec, tradeoff_family, &settings, threads)?;
    let mut out = Outputs::default();
    match format {
        Format::Csv => {
            out.add(&a.output.out, formats::family_csv(&cmp));
            if let Some(p) = &a.tradeoff_out {
                out.add(p, formats::tradeoff_csv(&cmp.tradeoff));
            }
        }
        Format::Json => {
            out.add(&a.output.out, formats::comparison_json(&cmp));
            if let Some(p) = &a.tradeoff_out {
                out.add(p, formats::tradeoff_json(&cmp));
            }
        }
    }
    let extra = serde_json::json!({
        "tradeoff_family": tradeoff_family.name(),
        "points": settings.grid_points,
        "threshold_db": settings.stop_threshold_db,
    });
    add_meta(&mut out, a.output.meta.as_deref(), "compare", &spec, method, Some(extra));
    out.commit()
}
