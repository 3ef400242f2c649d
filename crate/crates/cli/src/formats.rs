//! CSV and JSON renderings. Floats in CSV use `{:.16e}`, which round-trips
//! every f64 exactly; JSON uses the shortest round-trip form.

use std::fmt::Write as _;

use nyqshape::sweep::{FamilyRow, TradeoffCell};
use nyqshape::{
    DesignMethod, DesignSpec, FamilyComparison, FirFilter, IsiReport, ResponseGrid, SpectralMetrics, SweepReport,
};
use serde::Serialize;

use crate::error::{CliError, Result};

pub const TAPS_HEADER: &str = "index,tap";
pub const RESPONSE_HEADER: &str = "f_hz,norm_freq,mag_db,phase_deg,group_delay_samples";
pub const SWEEP_HEADER: &str = "swept_value,n_taps,occupied_bw_hz,main_lobe_edge_hz,stopband_start_hz,\
peak_sidelobe_db,peak_distortion,rms_distortion,phase_at_nu1_deg";
pub const FAMILY_HEADER: &str = "family,main_lobe_edge_hz,stopband_start_hz,peak_sidelobe_db,\
passband_ripple_db,peak_distortion,rms_distortion,time_sampling_peak_distortion";
pub const TRADEOFF_HEADER: &str = "delay_symbols_d,oversample_m,n_taps,peak_distortion,peak_sidelobe_db";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn taps_csv(taps: &[f64]) -> String {
    let mut s = String::from(TAPS_HEADER);
    s.push('\n');
    for (i, t) in taps.iter().enumerate() {
        let _ = writeln!(s, "{i},{}", num(*t));
    }
    s
}

/// Reads a file written by [`taps_csv`].
pub fn parse_taps_csv(text: &str) -> Result<Vec<f64>> {
    let mut lines = text.lines();
    if lines.next() != Some(TAPS_HEADER) {
        return Err(CliError::Format(format!("taps file must start with '{TAPS_HEADER}'")));
    }
    lines
        .enumerate()
        .map(|(expect, line)| {
            let (idx, tap) = line
                .split_once(',')
                .ok_or_else(|| CliError::Format(format!("row {expect}: expected index,tap")))?;
            if idx.parse::<usize>().ok() != Some(expect) {
                return Err(CliError::Format(format!("row {expect}: index '{idx}' out of sequence")));
            }
            tap.parse::<f64>()
                .map_err(|_| CliError::Format(format!("row {expect}: bad tap '{tap}'")))
        })
        .collect()
}

pub fn response_csv(grid: &ResponseGrid) -> String {
    let mut s = String::from(RESPONSE_HEADER);
    s.push('\n');
    for i in 0..grid.len() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            num(grid.f_hz[i]),
            num(grid.norm_freq[i]),
            num(grid.mag_db[i]),
            num(grid.phase_deg[i]),
            num(grid.group_delay_samples[i])
        );
    }
    s
}

pub fn sweep_csv(report: &SweepReport) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in &report.records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            num(r.swept_value),
            r.n_taps,
            num(r.occupied_bw_hz),
            num(r.metrics.main_lobe_edge_hz),
            num(r.metrics.stopband_start_hz),
            opt(r.metrics.peak_sidelobe_db),
            num(r.isi.peak_distortion),
            num(r.isi.rms_distortion),
            num(r.phase_at_nu1_deg)
        );
    }
    s
}

pub fn family_csv(cmp: &FamilyComparison) -> String {
    let mut s = String::from(FAMILY_HEADER);
    s.push('\n');
    for r in &cmp.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.family,
            num(r.metrics.main_lobe_edge_hz),
            num(r.metrics.stopband_start_hz),
            opt(r.metrics.peak_sidelobe_db),
            num(r.metrics.passband_ripple_db),
            num(r.isi.peak_distortion),
            num(r.isi.rms_distortion),
            num(r.time_sampling_peak_distortion)
        );
    }
    s
}

pub fn tradeoff_csv(cells: &[TradeoffCell]) -> String {
    let mut s = String::from(TRADEOFF_HEADER);
    s.push('\n');
    for c in cells {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.delay_symbols_d,
            c.oversample_m,
            c.n_taps,
            num(c.peak_distortion),
            opt(c.peak_sidelobe_db)
        );
    }
    s
}

#[derive(Debug, Serialize)]
pub struct SpecDoc {
    pub family: &'static str,
    pub alpha: f64,
    pub symbol_rate_hz: f64,
    pub oversample_m: u32,
    pub delay_symbols_d: u32,
    pub normalization: &'static str,
    pub method: &'static str,
    pub sample_rate_hz: f64,
    pub n_taps: usize,
    pub delay_samples: usize,
}

impl SpecDoc {
    pub fn new(spec: &DesignSpec, method: DesignMethod) -> Self {
        SpecDoc {
            family: spec.family.name(),
            alpha: spec.params.rolloff(),
            symbol_rate_hz: spec.params.symbol_rate_hz(),
            oversample_m: spec.oversample_m,
            delay_symbols_d: spec.delay_symbols_d,
            normalization: spec.normalization.name(),
            method: method.name(),
            sample_rate_hz: spec.sample_rate_hz(),
            n_taps: nyqshape::tap_count(spec),
            delay_samples: spec.delay_samples(),
        }
    }
}

#[derive(Debug, Serialize)]
struct TapRow {
    index: usize,
    tap: f64,
}

#[derive(Debug, Serialize)]
struct ResponseRow {
    f_hz: f64,
    norm_freq: f64,
    mag_db: f64,
    phase_deg: f64,
    group_delay_samples: f64,
}

#[derive(Debug, Serialize)]
struct MetricsDoc {
    main_lobe_edge_hz: f64,
    stopband_start_hz: f64,
    peak_sidelobe_db: Option<f64>,
    passband_ripple_db: f64,
}

impl From<&SpectralMetrics> for MetricsDoc {
    fn from(m: &SpectralMetrics) -> Self {
        MetricsDoc {
            main_lobe_edge_hz: m.main_lobe_edge_hz,
            stopband_start_hz: m.stopband_start_hz,
            peak_sidelobe_db: m.peak_sidelobe_db,
            passband_ripple_db: m.passband_ripple_db,
        }
    }
}

#[derive(Debug, Serialize)]
struct IsiDoc {
    symbol_samples: Vec<f64>,
    peak_distortion: f64,
    rms_distortion: f64,
}

impl From<&IsiReport> for IsiDoc {
    fn from(r: &IsiReport) -> Self {
        IsiDoc {
            symbol_samples: r.symbol_samples.clone(),
            peak_distortion: r.peak_distortion,
            rms_distortion: r.rms_distortion,
        }
    }
}

#[derive(Debug, Serialize)]
struct SweepRow {
    swept_value: f64,
    n_taps: usize,
    occupied_bw_hz: f64,
    main_lobe_edge_hz: f64,
    stopband_start_hz: f64,
    peak_sidelobe_db: Option<f64>,
    peak_distortion: f64,
    rms_distortion: f64,
    phase_at_nu1_deg: f64,
}

#[derive(Debug, Serialize)]
struct FamilyDoc {
    family: &'static str,
    main_lobe_edge_hz: f64,
    stopband_start_hz: f64,
    peak_sidelobe_db: Option<f64>,
    passband_ripple_db: f64,
    peak_distortion: f64,
    rms_distortion: f64,
    time_sampling_peak_distortion: f64,
}

impl From<&FamilyRow> for FamilyDoc {
    fn from(r: &FamilyRow) -> Self {
        FamilyDoc {
            family: r.family.name(),
            main_lobe_edge_hz: r.metrics.main_lobe_edge_hz,
            stopband_start_hz: r.metrics.stopband_start_hz,
            peak_sidelobe_db: r.metrics.peak_sidelobe_db,
            passband_ripple_db: r.metrics.passband_ripple_db,
            peak_distortion: r.isi.peak_distortion,
            rms_distortion: r.isi.rms_distortion,
            time_sampling_peak_distortion: r.time_sampling_peak_distortion,
        }
    }
}

#[derive(Debug, Serialize)]
struct TradeoffDoc {
    delay_symbols_d: u32,
    oversample_m: u32,
    n_taps: usize,
    peak_distortion: f64,
    peak_sidelobe_db: Option<f64>,
}

impl From<&TradeoffCell> for TradeoffDoc {
    fn from(c: &TradeoffCell) -> Self {
        TradeoffDoc {
            delay_symbols_d: c.delay_symbols_d,
            oversample_m: c.oversample_m,
            n_taps: c.n_taps,
            peak_distortion: c.peak_distortion,
            peak_sidelobe_db: c.peak_sidelobe_db,
        }
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data always serializes");
    s.push('\n');
    s
}

pub fn taps_json(filter: &FirFilter, spec: &DesignSpec, method: DesignMethod) -> String {
    #[derive(Serialize)]
    struct Doc {
        spec: SpecDoc,
        taps: Vec<TapRow>,
    }
    to_json(&Doc {
        spec: SpecDoc::new(spec, method),
        taps: filter
            .taps()
            .iter()
            .enumerate()
            .map(|(index, &tap)| TapRow { index, tap })
            .collect(),
    })
}

pub fn analysis_json(
    spec: &DesignSpec,
    method: DesignMethod,
    grid: &ResponseGrid,
    metrics: &SpectralMetrics,
    isi: &IsiReport,
) -> String {
    #[derive(Serialize)]
    struct Doc {
        spec: SpecDoc,
        metrics: MetricsDoc,
        isi: IsiDoc,
        response: Vec<ResponseRow>,
    }
    to_json(&Doc {
        spec: SpecDoc::new(spec, method),
        metrics: metrics.into(),
        isi: isi.into(),
        response: (0..grid.len())
            .map(|i| ResponseRow {
                f_hz: grid.f_hz[i],
                norm_freq: grid.norm_freq[i],
                mag_db: grid.mag_db[i],
                phase_deg: grid.phase_deg[i],
                group_delay_samples: grid.group_delay_samples[i],
            })
            .collect(),
    })
}

pub fn sweep_json(report: &SweepReport, method: DesignMethod) -> String {
    #[derive(Serialize)]
    struct Doc {
        axis: &'static str,
        base_spec: SpecDoc,
        records: Vec<SweepRow>,
    }
    to_json(&Doc {
        axis: report.axis.name(),
        base_spec: SpecDoc::new(&report.base_spec, method),
        records: report
            .records
            .iter()
            .map(|r| SweepRow {
                swept_value: r.swept_value,
                n_taps: r.n_taps,
                occupied_bw_hz: r.occupied_bw_hz,
                main_lobe_edge_hz: r.metrics.main_lobe_edge_hz,
                stopband_start_hz: r.metrics.stopband_start_hz,
                peak_sidelobe_db: r.metrics.peak_sidelobe_db,
                peak_distortion: r.isi.peak_distortion,
                rms_distortion: r.isi.rms_distortion,
                phase_at_nu1_deg: r.phase_at_nu1_deg,
            })
            .collect(),
    })
}

pub fn comparison_json(cmp: &FamilyComparison) -> String {
    #[derive(Serialize)]
    struct Doc {
        alpha: f64,
        symbol_rate_hz: f64,
        oversample_m: u32,
        delay_symbols_d: u32,
        families: Vec<FamilyDoc>,
        tradeoff_family: &'static str,
        tradeoff: Vec<TradeoffDoc>,
    }
    to_json(&Doc {
        alpha: cmp.params.rolloff(),
        symbol_rate_hz: cmp.params.symbol_rate_hz(),
        oversample_m: cmp.oversample_m,
        delay_symbols_d: cmp.delay_symbols_d,
        families: cmp.rows.iter().map(FamilyDoc::from).collect(),
        tradeoff_family: cmp.tradeoff_family.name(),
        tradeoff: cmp.tradeoff.iter().map(TradeoffDoc::from).collect(),
    })
}

pub fn tradeoff_json(cmp: &FamilyComparison) -> String {
    #[derive(Serialize)]
    struct Doc {
        tradeoff_family: &'static str,
        tradeoff: Vec<TradeoffDoc>,
    }
    to_json(&Doc {
        tradeoff_family: cmp.tradeoff_family.name(),
        tradeoff: cmp.tradeoff.iter().map(TradeoffDoc::from).collect(),
    })
}
