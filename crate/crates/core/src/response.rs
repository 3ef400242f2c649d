//! Frequency response, group delay, lobe metrics, symbol-spaced ISI and eye data.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::design::FirFilter;
use crate::rng::SplitMix64;
use crate::spectrum::band_edges;
use crate::{Error, Result};

/// Magnitudes are floored here so a grid never holds `-inf`.
pub const MAG_FLOOR_DB: f64 = -300.0;

/// Points on `[0, f_s/2]` used for [`crate::Normalization::UnitPeakResponse`].
pub const PEAK_SEARCH_POINTS: usize = 4096;

/// Minimum grid size for lobe detection and reliable unwrapping.
pub const MIN_METRIC_POINTS: usize = 512;

/// Below this fraction of the grid peak the phase of `H` is rounding noise.
const PHASE_RELIABLE_FRACTION: f64 = 1e-8;

/// `H(ν) = Σ taps[n] e^{-i2πνn}` with `ν` in cycles per sample.
pub(crate) fn dtft(taps: &[f64], nu: f64) -> Complex64 {
    taps.iter()
        .enumerate()
        .map(|(n, &t)| {
            let theta = -2.0 * PI * nu * n as f64;
            Complex64::new(t * libm::cos(theta), t * libm::sin(theta))
        })
        .sum()
}

/// Peak of `|H|` over [`PEAK_SEARCH_POINTS`] points on `[0, f_s/2]`.
pub(crate) fn peak_response_magnitude(taps: &[f64]) -> f64 {
    (0..PEAK_SEARCH_POINTS)
        .map(|j| dtft(taps, 0.5 * j as f64 / (PEAK_SEARCH_POINTS - 1) as f64).norm())
        .fold(0.0, f64::max)
}

fn to_db(mag: f64) -> f64 {
    if mag > 0.0 {
        (20.0 * libm::log10(mag)).max(MAG_FLOOR_DB)
    } else {
        MAG_FLOOR_DB
    }
}

/// Sampled frequency response of one filter.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseGrid {
    pub f_hz: Vec<f64>,
    /// `f / (f_s/2)`.
    pub norm_freq: Vec<f64>,
    pub response: Vec<Complex64>,
    pub mag_db: Vec<f64>,
    pub phase_deg: Vec<f64>,
    pub group_delay_samples: Vec<f64>,
    pub sample_rate_hz: f64,
    /// Inner band edge `f1` of the originating design, 0 when unknown.
    pub passband_edge_hz: f64,
}

impl ResponseGrid {
    pub fn len(&self) -> usize {
        self.f_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_hz.is_empty()
    }
}

/// Unwraps phase modulo 180°.
///
/// A real zero-phase amplitude changing sign shows up as a 180° step; folding
/// those together with ordinary 360° wraps yields the continuous linear-phase
/// term. Samples whose magnitude is at rounding level carry no usable phase;
/// they get the value extrapolated from the last reliable slope.
fn unwrap_phase_deg(response: &[Complex64]) -> Vec<f64> {
    let peak = response.iter().map(|h| h.norm()).fold(0.0, f64::max);
    let floor = peak * PHASE_RELIABLE_FRACTION;
    let mut out = Vec::with_capacity(response.len());
    let mut anchor: Option<(usize, f64)> = None;
    let mut slope = 0.0;
    for (j, h) in response.iter().enumerate() {
        let raw = libm::atan2(h.im, h.re).to_degrees();
        let predicted = match anchor {
            Some((i, v)) => v + slope * (j - i) as f64,
            None => 0.0,
        };
        if h.norm() > floor {
            let value = raw + 180.0 * libm::round((predicted - raw) / 180.0);
            if let Some((i, v)) = anchor {
                slope = (value - v) / (j - i) as f64;
            }
            anchor = Some((j, value));
            out.push(value);
        } else {
            out.push(predicted);
        }
    }
    out
}

pub fn frequency_response(filter: &FirFilter, n_points: usize, f_max_hz: f64) -> Result<ResponseGrid> {
    if n_points < 2 {
        return Err(Error::InvalidArg("response grid needs at least 2 points"));
    }
    let fs = filter.sample_rate_hz();
    let nyquist = fs / 2.0;
    if !(f_max_hz > 0.0 && f_max_hz <= nyquist) {
        return Err(Error::InvalidRange {
            f_max_hz,
            nyquist_hz: nyquist,
        });
    }
    let last = (n_points - 1) as f64;
    let f_hz: Vec<f64> = (0..n_points)
        .map(|j| {
            if j == n_points - 1 {
                f_max_hz
            } else {
                f_max_hz * j as f64 / last
            }
        })
        .collect();
    let norm_freq: Vec<f64> = f_hz.iter().map(|f| f / nyquist).collect();
    let response: Vec<Complex64> = f_hz.iter().map(|f| dtft(filter.taps(), f / fs)).collect();
    let mag_db = response.iter().map(|h| to_db(h.norm())).collect();
    let phase_deg = unwrap_phase_deg(&response);
    let passband_edge_hz = filter
        .spec()
        .map(|s| band_edges(&s.params).f1_hz)
        .unwrap_or(0.0);
    let mut grid = ResponseGrid {
        f_hz,
        norm_freq,
        response,
        mag_db,
        phase_deg,
        group_delay_samples: Vec::new(),
        sample_rate_hz: fs,
        passband_edge_hz,
    };
    grid.group_delay_samples = group_delay(filter, &grid);
    Ok(grid)
}

/// `-dφ/dω` in samples: central differences inside, one-sided at the ends.
pub fn group_delay(filter: &FirFilter, grid: &ResponseGrid) -> Vec<f64> {
    let n = grid.f_hz.len();
    let omega: Vec<f64> = grid
        .f_hz
        .iter()
        .map(|f| 2.0 * PI * f / filter.sample_rate_hz())
        .collect();
    let phase: Vec<f64> = grid.phase_deg.iter().map(|p| p.to_radians()).collect();
    if n < 2 {
        return alloc::vec![0.0; n];
    }
    (0..n)
        .map(|j| {
            let (a, b) = match j {
                0 => (0, 1),
                _ if j == n - 1 => (n - 2, n - 1),
                _ => (j - 1, j + 1),
            };
            -(phase[b] - phase[a]) / (omega[b] - omega[a])
        })
        .collect()
}

/// Lobe and ripple summary of a magnitude response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMetrics {
    /// First strict local minimum of `mag_db` beyond `f1`, or `f_s/2` if none.
    pub main_lobe_edge_hz: f64,
    /// Lowest frequency (not below the main-lobe edge) above which the
    /// response stays under the threshold.
    pub stopband_start_hz: f64,
    /// Largest `mag_db` beyond the main-lobe edge; `None` without a local minimum.
    pub peak_sidelobe_db: Option<f64>,
    pub passband_ripple_db: f64,
}

pub fn spectral_metrics(grid: &ResponseGrid, stop_threshold_db: f64) -> Result<SpectralMetrics> {
    let n = grid.len();
    if n < MIN_METRIC_POINTS {
        return Err(Error::GridTooCoarse {
            points: n,
            required: MIN_METRIC_POINTS,
        });
    }
    if stop_threshold_db.is_nan() || stop_threshold_db >= 0.0 {
        return Err(Error::InvalidArg("stopband threshold must be negative"));
    }
    let nyquist = grid.sample_rate_hz / 2.0;
    if grid.f_hz[0] != 0.0 || grid.f_hz[n - 1] != nyquist {
        return Err(Error::InvalidArg("metrics need a grid spanning [0, f_s/2]"));
    }
    let mag = &grid.mag_db;
    let f1 = grid.passband_edge_hz;

    let edge_idx = (1..n - 1).find(|&j| grid.f_hz[j] > f1 && mag[j] < mag[j - 1] && mag[j] < mag[j + 1]);
    let (main_lobe_edge_hz, peak_sidelobe_db) = match edge_idx {
        Some(j) => (
            grid.f_hz[j],
            Some(mag[j + 1..].iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        ),
        None => (nyquist, None),
    };

    let stop_raw = match mag.iter().rposition(|&m| m >= stop_threshold_db) {
        None => grid.f_hz[0],
        Some(last) if last + 1 < n => grid.f_hz[last + 1],
        Some(_) => nyquist,
    };
    let stopband_start_hz = stop_raw.max(main_lobe_edge_hz);

    let (lo, hi) = grid
        .f_hz
        .iter()
        .zip(mag)
        .filter(|(f, _)| **f <= f1)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, &m)| {
            (lo.min(m), hi.max(m))
        });

    Ok(SpectralMetrics {
        main_lobe_edge_hz,
        stopband_start_hz,
        peak_sidelobe_db,
        passband_ripple_db: hi - lo,
    })
}

/// Symbol-spaced samples of a pulse and the resulting distortion.
#[derive(Debug, Clone, PartialEq)]
pub struct IsiReport {
    /// `p̂(kT)` for `k = -K..=K`, scaled so the middle entry is exactly 1.
    pub symbol_samples: Vec<f64>,
    /// `Σ_{k≠0} |p̂(kT)|`.
    pub peak_distortion: f64,
    /// `sqrt(Σ_{k≠0} p̂(kT)²)`.
    pub rms_distortion: f64,
}

/// ISI of an arbitrary odd-length tap vector sampled every `samples_per_symbol`
/// taps around its center, over as many symbols as the taps reach.
pub fn isi_from_taps(taps: &[f64], samples_per_symbol: usize) -> Result<IsiReport> {
    if taps.len().is_multiple_of(2) || samples_per_symbol == 0 {
        return Err(Error::InvalidArg("need odd tap count and positive samples per symbol"));
    }
    let center = (taps.len() - 1) / 2;
    let c = taps[center];
    if c == 0.0 {
        return Err(Error::DegenerateFilter);
    }
    let span = center / samples_per_symbol;
    let symbol_samples: Vec<f64> = (0..=2 * span)
        .map(|i| {
            if i == span {
                1.0
            } else {
                taps[center + i * samples_per_symbol - span * samples_per_symbol] / c
            }
        })
        .collect();
    let (peak, sq) = symbol_samples
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != span)
        .fold((0.0, 0.0), |(p, s), (_, v)| (p + libm::fabs(*v), s + v * v));
    Ok(IsiReport {
        symbol_samples,
        peak_distortion: peak,
        rms_distortion: libm::sqrt(sq),
    })
}

pub fn isi_report(filter: &FirFilter) -> Result<IsiReport> {
    let spec = filter
        .spec()
        .ok_or(Error::InvalidArg("ISI report needs a designed filter"))?;
    isi_from_taps(filter.taps(), spec.oversample_m as usize)
}

/// Full linear convolution by direct summation.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Eye-diagram traces for a pseudo-random ±1 stream drawn from SplitMix64.
pub fn eye_trace(filter: &FirFilter, n_symbols: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if n_symbols < 16 {
        return Err(Error::InvalidArg("eye trace needs at least 16 symbols"));
    }
    let mut rng = SplitMix64::new(seed);
    let symbols: Vec<f64> = (0..n_symbols).map(|_| rng.next_symbol()).collect();
    eye_trace_with_symbols(filter, &symbols)
}

/// Eye-diagram traces for a given symbol stream.
///
/// Symbols are placed as an impulse train at `M` samples per symbol and
/// filtered. One trace of `2M+1` samples is produced per symbol whose window
/// (one symbol either side of its sampling instant) is free of start-up and
/// tail transients; the sampling instant is entry `M` of each trace.
pub fn eye_trace_with_symbols(filter: &FirFilter, symbols: &[f64]) -> Result<Vec<Vec<f64>>> {
    if symbols.len() < 16 {
        return Err(Error::InvalidArg("eye trace needs at least 16 symbols"));
    }
    let m = filter
        .spec()
        .ok_or(Error::InvalidArg("eye trace needs a designed filter"))?
        .oversample_m as usize;
    let d = filter.delay_samples();
    let span = d.div_ceil(m);
    let mut upsampled = alloc::vec![0.0; (symbols.len() - 1) * m + 1];
    for (i, s) in symbols.iter().enumerate() {
        upsampled[i * m] = *s;
    }
    let y = convolve(&upsampled, filter.taps());
    let first = span + 1;
    let last = symbols.len().saturating_sub(span + 2);
    if first > last {
        return Err(Error::InvalidArg("symbol stream too short for the filter span"));
    }
    Ok((first..=last)
        .map(|i| {
            let c = i * m + d;
            y[c - m..=c + m].to_vec()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{design_frequency_sampling, DesignSpec, Normalization};
    use alloc::vec;

    #[test]
    fn single_tap_has_zero_delay() {
        let f = FirFilter::from_taps(vec![1.0], 1.0).unwrap();
        let g = frequency_response(&f, 64, 0.5).unwrap();
        assert!(g.group_delay_samples.iter().all(|&x| x == 0.0));
        assert!(g.phase_deg.iter().all(|&x| x == 0.0));
        assert!(g.mag_db.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn symmetric_nine_tap_phase_law() {
        let f = FirFilter::from_taps(vec![0.1, -0.2, 0.3, 0.5, 1.0, 0.5, 0.3, -0.2, 0.1], 1.0).unwrap();
        let g = frequency_response(&f, 1024, 0.5).unwrap();
        for (nu, (ph, mag)) in g.norm_freq.iter().zip(g.phase_deg.iter().zip(&g.mag_db)) {
            if *mag > -100.0 {
                assert!((ph + 180.0 * nu * 4.0).abs() < 1e-6, "nu={nu} phase={ph}");
            }
        }
    }

    #[test]
    fn rejects_bad_range() {
        let f = FirFilter::from_taps(vec![1.0], 2.0).unwrap();
        assert!(matches!(frequency_response(&f, 10, 1.5), Err(Error::InvalidRange { .. })));
        assert!(matches!(frequency_response(&f, 10, 0.0), Err(Error::InvalidRange { .. })));
        assert!(frequency_response(&f, 1, 1.0).is_err());
    }

    #[test]
    fn magnitude_floor_applies_to_exact_zero() {
        let f = FirFilter::from_taps(vec![0.0, 0.0], 2.0).unwrap();
        let g = frequency_response(&f, 3, 1.0).unwrap();
        assert!(g.mag_db.iter().all(|&m| m == MAG_FLOOR_DB));
        assert!(g.mag_db.iter().all(|m| m.is_finite()));
        assert!(g.phase_deg.iter().all(|p| p.is_finite()));
    }

    #[test]
    fn metrics_reject_coarse_grid() {
        let f = design_frequency_sampling(&DesignSpec::default()).unwrap();
        let g = frequency_response(&f, 100, f.sample_rate_hz() / 2.0).unwrap();
        assert_eq!(
            spectral_metrics(&g, -40.0),
            Err(Error::GridTooCoarse { points: 100, required: 512 })
        );
        let g = frequency_response(&f, 512, f.sample_rate_hz() / 2.0).unwrap();
        assert!(spectral_metrics(&g, 3.0).is_err());
        assert!(spectral_metrics(&g, -40.0).is_ok());
    }

    #[test]
    fn isi_of_known_taps() {
        // samples at offsets -2, 0, 2 of (0.1, x, 1.0, x, -0.2) with M = 2
        let r = isi_from_taps(&[0.2, 0.7, 2.0, 0.7, -0.4], 2).unwrap();
        assert_eq!(r.symbol_samples, vec![0.1, 1.0, -0.2]);
        assert!((r.peak_distortion - 0.3).abs() < 1e-15);
        assert!((r.rms_distortion - libm::sqrt(0.05)).abs() < 1e-15);
        assert_eq!(isi_from_taps(&[1.0, 0.0, 1.0], 1), Err(Error::DegenerateFilter));
    }

    #[test]
    fn convolve_small() {
        assert_eq!(convolve(&[1.0, 2.0], &[1.0, 1.0, 1.0]), vec![1.0, 3.0, 3.0, 2.0]);
    }

    #[test]
    fn eye_trace_shape_and_errors() {
        let mut spec = DesignSpec::default();
        spec.normalization = Normalization::UnitDcGain;
        let f = design_frequency_sampling(&spec).unwrap();
        assert!(eye_trace(&f, 15, 1).is_err());
        let traces = eye_trace(&f, 64, 1).unwrap();
        // D = 2: symbols 3..=60 have transient-free windows
        assert_eq!(traces.len(), 58);
        assert!(traces.iter().all(|t| t.len() == 5));
    }
}
