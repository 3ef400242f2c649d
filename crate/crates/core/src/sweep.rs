//! Parameter sweeps over roll-off, delay and oversampling, and the
//! per-family comparison with its (D, M) tradeoff grid.
//!
//! Sweeps are split into [`sweep_points`] (validate and order the design
//! points) and [`evaluate_point`] (design and analyse one point) so callers
//! can evaluate points in parallel and still assemble a report in order.

use alloc::vec::Vec;

use crate::design::{design, tap_count, DesignMethod, DesignSpec};
use crate::response::{frequency_response, isi_report, spectral_metrics, IsiReport, SpectralMetrics};
use crate::spectrum::{band_edges, PulseFamily, PulseParams};
use crate::{Error, Result};

/// How each sweep point is designed and measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisSettings {
    /// Response grid size on `[0, f_s/2]`.
    pub grid_points: usize,
    pub stop_threshold_db: f64,
    pub method: DesignMethod,
}

impl Default for AnalysisSettings {
    fn default() -> Self {
        AnalysisSettings {
            grid_points: 4096,
            stop_threshold_db: -40.0,
            method: DesignMethod::FrequencySampling,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Alpha,
    Delay,
    OversampleEven,
    OversampleOdd,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Alpha => "alpha",
            SweepAxis::Delay => "delay",
            SweepAxis::OversampleEven => "oversample_even",
            SweepAxis::OversampleOdd => "oversample_odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Measurements for one design point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub swept_value: f64,
    pub spec: DesignSpec,
    pub n_taps: usize,
    pub metrics: SpectralMetrics,
    pub isi: IsiReport,
    /// Unwrapped phase at `f_s/2`.
    pub phase_at_nu1_deg: f64,
    /// Largest `mag_db` over `[0, f1]`.
    pub passband_max_db: f64,
    /// Two-sided ideal bandwidth `f_d(1+α)`.
    pub occupied_bw_hz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub base_spec: DesignSpec,
    pub records: Vec<SweepRecord>,
}

/// Designs and analyses one point.
pub fn evaluate_point(spec: &DesignSpec, swept_value: f64, settings: &AnalysisSettings) -> Result<SweepRecord> {
    let filter = design(spec, settings.method)?;
    let grid = frequency_response(&filter, settings.grid_points, filter.sample_rate_hz() / 2.0)?;
    let metrics = spectral_metrics(&grid, settings.stop_threshold_db)?;
    let isi = isi_report(&filter)?;
    let f1 = band_edges(&spec.params).f1_hz;
    let passband_max_db = grid
        .f_hz
        .iter()
        .zip(&grid.mag_db)
        .filter(|(f, _)| **f <= f1)
        .map(|(_, m)| *m)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(SweepRecord {
        swept_value,
        spec: *spec,
        n_taps: filter.len(),
        metrics,
        isi,
        phase_at_nu1_deg: grid.phase_deg[grid.len() - 1],
        passband_max_db,
        occupied_bw_hz: 2.0 * band_edges(&spec.params).f2_hz,
    })
}

/// Validated, ascending design points for one axis.
///
/// Values are interpreted per axis: roll-off for [`SweepAxis::Alpha`],
/// otherwise non-negative integers.
pub fn sweep_points(axis: SweepAxis, base: &DesignSpec, values: &[f64]) -> Result<Vec<(f64, DesignSpec)>> {
    base.validate()?;
    if values.is_empty() {
        return Err(Error::InvalidArg("sweep needs at least one value"));
    }
    let mut sorted: Vec<f64> = values.to_vec();
    if sorted.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArg("sweep values must be finite"));
    }
    sorted.sort_by(f64::total_cmp);
    sorted
        .into_iter()
        .map(|v| {
            let mut spec = *base;
            match axis {
                SweepAxis::Alpha => spec.params = base.params.with_rolloff(v)?,
                SweepAxis::Delay => spec.delay_symbols_d = as_count(v)?,
                SweepAxis::OversampleEven | SweepAxis::OversampleOdd => {
                    let m = as_count(v)?;
                    let want_even = axis == SweepAxis::OversampleEven;
                    if (m % 2 == 0) != want_even {
                        return Err(Error::ParityViolation { m });
                    }
                    spec.oversample_m = m;
                }
            }
            spec.validate()?;
            Ok((v, spec))
        })
        .collect()
}

fn as_count(v: f64) -> Result<u32> {
    if v < 0.0 || libm::trunc(v) != v || v > u32::MAX as f64 {
        return Err(Error::InvalidArg("delay and oversampling values must be whole numbers"));
    }
    Ok(v as u32)
}

/// Runs a sweep sequentially.
pub fn run_sweep(axis: SweepAxis, base: &DesignSpec, values: &[f64], settings: &AnalysisSettings) -> Result<SweepReport> {
    let records = sweep_points(axis, base, values)?
        .iter()
        .map(|(v, spec)| evaluate_point(spec, *v, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        axis,
        base_spec: *base,
        records,
    })
}

/// Default roll-off set `{0.1, 0.5, 1.0}`.
pub const DEFAULT_ALPHAS: [f64; 3] = [0.1, 0.5, 1.0];
pub const DEFAULT_DELAYS: [u32; 5] = [2, 4, 6, 8, 10];
pub const DEFAULT_EVEN_M: [u32; 3] = [2, 4, 6];
pub const DEFAULT_ODD_M: [u32; 3] = [3, 5, 7];

pub fn sweep_alpha(base: &DesignSpec, alphas: &[f64], settings: &AnalysisSettings) -> Result<SweepReport> {
    run_sweep(SweepAxis::Alpha, base, alphas, settings)
}

pub fn sweep_delay(base: &DesignSpec, delays: &[u32], settings: &AnalysisSettings) -> Result<SweepReport> {
    if delays.contains(&0) {
        return Err(Error::InvalidSpec("group delay D must be >= 1"));
    }
    let values: Vec<f64> = delays.iter().map(|&d| d as f64).collect();
    run_sweep(SweepAxis::Delay, base, &values, settings)
}

pub fn sweep_oversample(base: &DesignSpec, ms: &[u32], parity: Parity, settings: &AnalysisSettings) -> Result<SweepReport> {
    let axis = match parity {
        Parity::Even => SweepAxis::OversampleEven,
        Parity::Odd => SweepAxis::OversampleOdd,
    };
    let values: Vec<f64> = ms.iter().map(|&m| m as f64).collect();
    run_sweep(axis, base, &values, settings)
}

/// One family at the shared (α, M, D).
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub family: PulseFamily,
    pub metrics: SpectralMetrics,
    pub isi: IsiReport,
    /// Peak distortion of the time-sampled (quadrature) design at the same point.
    pub time_sampling_peak_distortion: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffCell {
    pub delay_symbols_d: u32,
    pub oversample_m: u32,
    pub n_taps: usize,
    pub peak_distortion: f64,
    pub peak_sidelobe_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyComparison {
    pub params: PulseParams,
    pub oversample_m: u32,
    pub delay_symbols_d: u32,
    pub rows: Vec<FamilyRow>,
    pub tradeoff_family: PulseFamily,
    pub tradeoff: Vec<TradeoffCell>,
}

pub const TRADEOFF_DELAYS: core::ops::RangeInclusive<u32> = 2..=10;
pub const TRADEOFF_OVERSAMPLE: core::ops::RangeInclusive<u32> = 2..=7;

/// All five families at one point, plus the (D, M) grid for `tradeoff_family`.
pub fn family_comparison(
    params: PulseParams,
    m: u32,
    d: u32,
    tradeoff_family: PulseFamily,
    settings: &AnalysisSettings,
) -> Result<FamilyComparison> {
    let base = DesignSpec {
        params,
        oversample_m: m,
        delay_symbols_d: d,
        ..DesignSpec::default()
    };
    base.validate()?;
    let rows = PulseFamily::ALL
        .into_iter()
        .map(|family| family_row(&DesignSpec { family, ..base }, settings))
        .collect::<Result<Vec<_>>>()?;
    let tradeoff = tradeoff_cells()
        .map(|(d, m)| {
            tradeoff_cell(
                &DesignSpec {
                    family: tradeoff_family,
                    oversample_m: m,
                    delay_symbols_d: d,
                    ..base
                },
                settings,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyComparison {
        params,
        oversample_m: m,
        delay_symbols_d: d,
        rows,
        tradeoff_family,
        tradeoff,
    })
}

/// `(D, M)` pairs of the tradeoff grid, D-major.
pub fn tradeoff_cells() -> impl Iterator<Item = (u32, u32)> {
    TRADEOFF_DELAYS.flat_map(|d| TRADEOFF_OVERSAMPLE.map(move |m| (d, m)))
}

pub fn family_row(spec: &DesignSpec, settings: &AnalysisSettings) -> Result<FamilyRow> {
    let record = evaluate_point(spec, spec.params.rolloff(), settings)?;
    let oracle = design(spec, DesignMethod::TimeSampling)?;
    Ok(FamilyRow {
        family: spec.family,
        metrics: record.metrics,
        isi: record.isi,
        time_sampling_peak_distortion: isi_report(&oracle)?.peak_distortion,
    })
}

pub fn tradeoff_cell(spec: &DesignSpec, settings: &AnalysisSettings) -> Result<TradeoffCell> {
    let record = evaluate_point(spec, spec.delay_symbols_d as f64, settings)?;
    Ok(TradeoffCell {
        delay_symbols_d: spec.delay_symbols_d,
        oversample_m: spec.oversample_m,
        n_taps: tap_count(spec),
        peak_distortion: record.isi.peak_distortion,
        peak_sidelobe_db: record.metrics.peak_sidelobe_db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_sorted_and_validated() {
        let base = DesignSpec::default();
        let pts = sweep_points(SweepAxis::Delay, &base, &[6.0, 2.0, 4.0]).unwrap();
        let ds: Vec<u32> = pts.iter().map(|(_, s)| s.delay_symbols_d).collect();
        assert_eq!(ds, [2, 4, 6]);
        assert!(sweep_points(SweepAxis::Alpha, &base, &[1.5]).is_err());
        assert!(sweep_points(SweepAxis::Delay, &base, &[2.5]).is_err());
        assert!(sweep_points(SweepAxis::Delay, &base, &[]).is_err());
        assert_eq!(
            sweep_points(SweepAxis::OversampleOdd, &base, &[3.0, 4.0]),
            Err(Error::ParityViolation { m: 4 })
        );
        assert_eq!(
            sweep_points(SweepAxis::OversampleEven, &base, &[3.0]),
            Err(Error::ParityViolation { m: 3 })
        );
    }

    #[test]
    fn tradeoff_grid_covers_all_cells() {
        let cells: Vec<_> = tradeoff_cells().collect();
        assert_eq!(cells.len(), 9 * 6);
        assert_eq!(cells[0], (2, 2));
        assert_eq!(cells[cells.len() - 1], (10, 7));
    }
}
