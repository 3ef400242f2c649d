//! Nyquist pulse-shaping spectra, linear-phase FIR design and response analysis.
//!
//! The crate is `no_std` and only needs `alloc`. Transcendental functions come
//! from [`libm`] so that results are bit-identical across targets.
//!
//! Module map:
//!
//! * [`spectrum`]: amplitude spectra of the raised-cosine and flipped pulse
//!   families, plus a quadrature oracle for the time-domain pulse.
//! * [`design`]: frequency-sampling and time-sampling FIR design.
//! * [`response`]: frequency response, group delay, lobe metrics, ISI and eye data.
//! * [`sweep`]: roll-off, delay and oversampling sweeps and the family comparison.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod design;
pub mod dft;
mod error;
pub mod response;
pub mod rng;
pub mod spectrum;
pub mod sweep;

pub use design::{
    design, design_frequency_sampling, design_time_sampling, normalize, tap_count, DesignMethod,
    DesignSpec, FirFilter, Normalization,
};
pub use error::{Error, Result};
pub use response::{
    eye_trace, eye_trace_with_symbols, frequency_response, group_delay, isi_from_taps, isi_report,
    spectral_metrics, IsiReport, ResponseGrid, SpectralMetrics,
};
pub use spectrum::{
    alias_sum, amplitude_spectrum, band_edges, ideal_pulse_value, BandEdges, PulseFamily,
    PulseParams,
};
pub use sweep::{
    family_comparison, sweep_alpha, sweep_delay, sweep_oversample, AnalysisSettings,
    FamilyComparison, Parity, SweepAxis, SweepRecord, SweepReport,
};

/// WCDMA chip rate, symbols per second.
pub const WCDMA_CHIP_RATE_HZ: f64 = 3.84e6;

/// Nominal WCDMA roll-off.
pub const WCDMA_ROLLOFF: f64 = 0.22;
