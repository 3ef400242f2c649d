//! Linear-phase FIR design for the pulse families.
//!
//! Two independent routes produce the same filter up to truncation aliasing:
//!
//! * frequency sampling: sample `F` on the length-N DFT grid, attach a linear
//!   phase of `(N-1)/2` samples and inverse-transform;
//! * time sampling: sample the quadrature pulse `p(t)` at `t = (n-d)/f_s`.
//!
//! Tap count is `N = 2·D·M + 1`, so the delay is `D` symbols exactly.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::dft::idft;
use crate::response::peak_response_magnitude;
use crate::spectrum::{amplitude_spectrum, ideal_pulse_value, PulseFamily, PulseParams};
use crate::{Error, Result};

/// Relative tolerance for the realness and mirror-symmetry checks on the raw
/// inverse transform.
const ASYMMETRY_TOLERANCE: f64 = 1e-8;

/// Smallest divisor accepted by [`normalize`].
const MIN_DIVISOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Taps sum to one.
    UnitDcGain,
    /// Taps have unit L2 norm.
    UnitEnergy,
    /// Largest tap magnitude is one.
    UnitPeakTap,
    /// Peak of `|H(f)|` on a 4096-point grid over `[0, f_s/2]` is one.
    UnitPeakResponse,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::UnitDcGain => "dc",
            Normalization::UnitEnergy => "energy",
            Normalization::UnitPeakTap => "peak-tap",
            Normalization::UnitPeakResponse => "peak-response",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dc" => Ok(Normalization::UnitDcGain),
            "energy" => Ok(Normalization::UnitEnergy),
            "peak-tap" => Ok(Normalization::UnitPeakTap),
            "peak-response" => Ok(Normalization::UnitPeakResponse),
            _ => Err(Error::InvalidParams(
                "normalization must be one of dc, energy, peak-tap, peak-response",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DesignMethod {
    #[default]
    FrequencySampling,
    TimeSampling,
}

impl DesignMethod {
    pub fn name(self) -> &'static str {
        match self {
            DesignMethod::FrequencySampling => "frequency",
            DesignMethod::TimeSampling => "time",
        }
    }
}

impl FromStr for DesignMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frequency" => Ok(DesignMethod::FrequencySampling),
            "time" => Ok(DesignMethod::TimeSampling),
            _ => Err(Error::InvalidParams("method must be frequency or time")),
        }
    }
}

/// Everything needed to design one transmit filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignSpec {
    pub params: PulseParams,
    pub family: PulseFamily,
    /// Samples per symbol, M ≥ 2.
    pub oversample_m: u32,
    /// Group delay in symbol periods, D ≥ 1.
    pub delay_symbols_d: u32,
    pub normalization: Normalization,
}

impl Default for DesignSpec {
    /// WCDMA base point: fexp, 3.84 Msym/s, α = 0.22, M = 2, D = 2.
    fn default() -> Self {
        DesignSpec {
            params: PulseParams::wcdma(),
            family: PulseFamily::FlippedExponential,
            oversample_m: 2,
            delay_symbols_d: 2,
            normalization: Normalization::UnitPeakResponse,
        }
    }
}

impl DesignSpec {
    pub fn validate(&self) -> Result<()> {
        if self.oversample_m < 2 {
            return Err(Error::InvalidSpec("oversampling factor M must be >= 2"));
        }
        if self.delay_symbols_d < 1 {
            return Err(Error::InvalidSpec("group delay D must be >= 1"));
        }
        Ok(())
    }

    /// `f_s = M·f_d`.
    pub fn sample_rate_hz(&self) -> f64 {
        self.oversample_m as f64 * self.params.symbol_rate_hz()
    }

    /// Delay in samples, `D·M`.
    pub fn delay_samples(&self) -> usize {
        self.delay_symbols_d as usize * self.oversample_m as usize
    }
}

/// `N = 2·D·M + 1`.
pub fn tap_count(spec: &DesignSpec) -> usize {
    2 * spec.delay_samples() + 1
}

/// A designed (or user-supplied) FIR filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
    sample_rate_hz: f64,
    spec: Option<DesignSpec>,
}

impl FirFilter {
    /// Wraps an arbitrary tap vector with no originating design.
    pub fn from_taps(taps: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidArg("filter needs at least one tap"));
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidArg("sample rate must be positive"));
        }
        Ok(FirFilter {
            taps,
            sample_rate_hz,
            spec: None,
        })
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn into_taps(self) -> Vec<f64> {
        self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    /// `(N-1)/2`.
    pub fn delay_samples(&self) -> usize {
        (self.taps.len() - 1) / 2
    }

    pub fn spec(&self) -> Option<&DesignSpec> {
        self.spec.as_ref()
    }

    /// True when `taps[n] == taps[N-1-n]` bit for bit.
    pub fn is_symmetric(&self) -> bool {
        self.taps
            .iter()
            .zip(self.taps.iter().rev())
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

/// Raw frequency-sampling inverse transform, before realness checks.
pub(crate) fn frequency_sampling_transform(spec: &DesignSpec) -> Vec<Complex64> {
    let n = tap_count(spec);
    let fs = spec.sample_rate_hz();
    let d = spec.delay_samples();
    let bins: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut f = k as f64 * fs / n as f64;
            if f > fs / 2.0 {
                f -= fs;
            }
            let amp = amplitude_spectrum(spec.family, &spec.params, libm::fabs(f));
            let theta = -2.0 * PI * ((k * d) % n) as f64 / n as f64;
            Complex64::new(amp * libm::cos(theta), amp * libm::sin(theta))
        })
        .collect();
    idft(&bins)
}

/// Frequency-sampled taps, symmetrized but not normalized.
pub fn frequency_sampled_taps(spec: &DesignSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let raw = frequency_sampling_transform(spec);
    let peak = raw.iter().map(|c| libm::fabs(c.re)).fold(0.0, f64::max);
    let imag = raw.iter().map(|c| libm::fabs(c.im)).fold(0.0, f64::max);
    let asym = raw
        .iter()
        .zip(raw.iter().rev())
        .map(|(a, b)| libm::fabs(a.re - b.re))
        .fold(0.0, f64::max);
    let residue = imag.max(asym);
    let limit = ASYMMETRY_TOLERANCE * peak;
    if residue.is_nan() || limit.is_nan() || residue > limit {
        return Err(Error::NumericalAsymmetry { residue, peak });
    }
    Ok(symmetrize(raw.iter().map(|c| c.re).collect()))
}

/// Time-sampled quadrature pulse, not normalized. `taps[d] = p(0)`.
pub fn time_sampled_taps(spec: &DesignSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = tap_count(spec);
    let d = spec.delay_samples();
    let fs = spec.sample_rate_hz();
    let mut taps = alloc::vec![0.0; n];
    for offset in 0..=d {
        let v = ideal_pulse_value(spec.family, &spec.params, offset as f64 / fs);
        taps[d + offset] = v;
        taps[d - offset] = v;
    }
    Ok(taps)
}

fn symmetrize(mut taps: Vec<f64>) -> Vec<f64> {
    let n = taps.len();
    for i in 0..n / 2 {
        let avg = 0.5 * (taps[i] + taps[n - 1 - i]);
        taps[i] = avg;
        taps[n - 1 - i] = avg;
    }
    taps
}

fn finish(taps: Vec<f64>, spec: &DesignSpec) -> Result<FirFilter> {
    let filter = FirFilter {
        taps,
        sample_rate_hz: spec.sample_rate_hz(),
        spec: Some(*spec),
    };
    normalize(&filter, spec.normalization)
}

pub fn design_frequency_sampling(spec: &DesignSpec) -> Result<FirFilter> {
    finish(frequency_sampled_taps(spec)?, spec)
}

pub fn design_time_sampling(spec: &DesignSpec) -> Result<FirFilter> {
    finish(time_sampled_taps(spec)?, spec)
}

pub fn design(spec: &DesignSpec, method: DesignMethod) -> Result<FirFilter> {
    match method {
        DesignMethod::FrequencySampling => design_frequency_sampling(spec),
        DesignMethod::TimeSampling => design_time_sampling(spec),
    }
}

/// Rescales a filter. Scaling every tap by one divisor keeps symmetry exact.
pub fn normalize(filter: &FirFilter, mode: Normalization) -> Result<FirFilter> {
    let taps = &filter.taps;
    let divisor = match mode {
        Normalization::UnitDcGain => taps.iter().sum::<f64>(),
        Normalization::UnitEnergy => libm::sqrt(taps.iter().map(|t| t * t).sum::<f64>()),
        Normalization::UnitPeakTap => taps.iter().map(|t| libm::fabs(*t)).fold(0.0, f64::max),
        Normalization::UnitPeakResponse => peak_response_magnitude(taps),
    };
    if !divisor.is_finite() || libm::fabs(divisor) < MIN_DIVISOR {
        return Err(Error::DegenerateFilter);
    }
    let mut spec = filter.spec;
    if let Some(s) = spec.as_mut() {
        s.normalization = mode;
    }
    Ok(FirFilter {
        taps: taps.iter().map(|t| t / divisor).collect(),
        sample_rate_hz: filter.sample_rate_hz,
        spec,
    })
}
