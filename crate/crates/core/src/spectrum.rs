//! Amplitude spectra of the supported Nyquist pulse families.
//!
//! Every family is flat (value 1) up to the inner band edge `f1 = B(1-α)`,
//! zero beyond the outer edge `f2 = B(1+α)`, and passes through ½ at the
//! Nyquist frequency `B = f_d/2`. The flipped families use a monotone shape
//! on `[f1, B]` and its point reflection through `(B, ½)` on `[B, f2]`, which
//! is exactly the vestigial symmetry required for zero ISI.

use core::f64::consts::{LN_2, PI};
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Panels per smooth piece in [`ideal_pulse_value`]. Must be even.
pub const SIMPSON_PANELS: usize = 1 << 14;

/// Pulse families understood by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PulseFamily {
    RaisedCosine,
    RootRaisedCosine,
    FlippedExponential,
    FlippedHyperbolicSecant,
    FlippedArcHyperbolicSecant,
}

impl PulseFamily {
    pub const ALL: [PulseFamily; 5] = [
        PulseFamily::RaisedCosine,
        PulseFamily::RootRaisedCosine,
        PulseFamily::FlippedExponential,
        PulseFamily::FlippedHyperbolicSecant,
        PulseFamily::FlippedArcHyperbolicSecant,
    ];

    /// The four families whose spectrum itself satisfies the Nyquist criterion.
    pub const NYQUIST: [PulseFamily; 4] = [
        PulseFamily::RaisedCosine,
        PulseFamily::FlippedExponential,
        PulseFamily::FlippedHyperbolicSecant,
        PulseFamily::FlippedArcHyperbolicSecant,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            PulseFamily::RaisedCosine => "rc",
            PulseFamily::RootRaisedCosine => "rrc",
            PulseFamily::FlippedExponential => "fexp",
            PulseFamily::FlippedHyperbolicSecant => "fsech",
            PulseFamily::FlippedArcHyperbolicSecant => "farcsech",
        }
    }

    pub fn is_nyquist(self) -> bool {
        self != PulseFamily::RootRaisedCosine
    }
}

impl fmt::Display for PulseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PulseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PulseFamily::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or(Error::InvalidParams(
                "family must be one of rc, rrc, fexp, fsech, farcsech",
            ))
    }
}

/// Symbol rate and roll-off of one pulse instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    symbol_rate_hz: f64,
    rolloff: f64,
}

impl PulseParams {
    pub fn new(symbol_rate_hz: f64, rolloff: f64) -> Result<Self> {
        if !(symbol_rate_hz.is_finite() && symbol_rate_hz > 0.0) {
            return Err(Error::InvalidParams(
                "symbol rate must be positive and finite",
            ));
        }
        if !(0.0..=1.0).contains(&rolloff) {
            return Err(Error::InvalidParams("roll-off alpha must lie in [0, 1]"));
        }
        Ok(PulseParams {
            symbol_rate_hz,
            rolloff,
        })
    }

    /// WCDMA defaults: 3.84 Msym/s, α = 0.22.
    pub fn wcdma() -> Self {
        PulseParams {
            symbol_rate_hz: crate::WCDMA_CHIP_RATE_HZ,
            rolloff: crate::WCDMA_ROLLOFF,
        }
    }

    pub fn symbol_rate_hz(&self) -> f64 {
        self.symbol_rate_hz
    }

    pub fn rolloff(&self) -> f64 {
        self.rolloff
    }

    /// Symbol period `T = 1/f_d`.
    pub fn symbol_period_s(&self) -> f64 {
        1.0 / self.symbol_rate_hz
    }

    /// Nyquist frequency `B = f_d/2`.
    pub fn nyquist_hz(&self) -> f64 {
        0.5 * self.symbol_rate_hz
    }

    pub fn with_rolloff(self, rolloff: f64) -> Result<Self> {
        PulseParams::new(self.symbol_rate_hz, rolloff)
    }
}

/// Transition band of a pulse: `f1 = B(1-α)`, `fN = B`, `f2 = B(1+α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEdges {
    pub f1_hz: f64,
    pub fn_hz: f64,
    pub f2_hz: f64,
}

pub fn band_edges(params: &PulseParams) -> BandEdges {
    let b = params.nyquist_hz();
    let excess = params.rolloff * b;
    BandEdges {
        f1_hz: b - excess,
        fn_hz: b,
        f2_hz: b + excess,
    }
}

/// `asech(z) = ln((1 + sqrt(1 - z²)) / z)` on `(0, 1]`, with `asech(1) = 0`.
pub(crate) fn asech(z: f64) -> f64 {
    if z >= 1.0 {
        return 0.0;
    }
    libm::log((1.0 + libm::sqrt(1.0 - z * z)) / z)
}

fn sech(x: f64) -> f64 {
    1.0 / libm::cosh(x)
}

/// Which smooth branch of the piecewise spectrum a frequency falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Pass,
    Inner,
    Outer,
}

/// Evaluates the smooth formula of one branch. `x` is assumed to lie in (or on
/// the boundary of) that branch; boundary tie-breaking happens in
/// [`amplitude_spectrum`]. Requires α > 0 for the transition branches.
fn branch_value(family: PulseFamily, params: &PulseParams, piece: Piece, x: f64) -> f64 {
    if piece == Piece::Pass {
        return 1.0;
    }
    let edges = band_edges(params);
    let (f1, f2) = (edges.f1_hz, edges.f2_hz);
    let alpha_b = params.rolloff * edges.fn_hz;
    match family {
        PulseFamily::RaisedCosine => 0.5 * (1.0 + libm::cos(PI * (x - f1) / (2.0 * alpha_b))),
        PulseFamily::RootRaisedCosine => {
            let rc = 0.5 * (1.0 + libm::cos(PI * (x - f1) / (2.0 * alpha_b)));
            libm::sqrt(rc.max(0.0))
        }
        PulseFamily::FlippedExponential => {
            let beta = LN_2 / alpha_b;
            match piece {
                Piece::Inner => libm::exp(-beta * (x - f1)),
                _ => 1.0 - libm::exp(-beta * (f2 - x)),
            }
        }
        PulseFamily::FlippedHyperbolicSecant => {
            let gamma = libm::log(2.0 + libm::sqrt(3.0)) / alpha_b;
            match piece {
                Piece::Inner => sech(gamma * (x - f1)),
                _ => 1.0 - sech(gamma * (f2 - x)),
            }
        }
        PulseFamily::FlippedArcHyperbolicSecant => {
            let k = 1.0 / (2.0 * libm::log(2.0 + libm::sqrt(3.0)));
            let width = 2.0 * alpha_b;
            match piece {
                Piece::Inner => 1.0 - k * asech(((f2 - x) / width).clamp(f64::MIN_POSITIVE, 1.0)),
                _ => k * asech(((x - f1) / width).clamp(f64::MIN_POSITIVE, 1.0)),
            }
        }
    }
}

/// Amplitude spectrum `F(|f|)`, dimensionless in `[0, 1]`.
///
/// Exactly 1 on `|f| <= f1`, exactly 0 on `|f| >= f2`, and exactly ½ at
/// `|f| = B` (√½ for the root raised cosine).
pub fn amplitude_spectrum(family: PulseFamily, params: &PulseParams, f_hz: f64) -> f64 {
    let x = libm::fabs(f_hz);
    let edges = band_edges(params);
    if x == edges.fn_hz {
        return match family {
            PulseFamily::RootRaisedCosine => core::f64::consts::FRAC_1_SQRT_2,
            _ => 0.5,
        };
    }
    if x <= edges.f1_hz {
        return 1.0;
    }
    if x >= edges.f2_hz {
        return 0.0;
    }
    let piece = if x < edges.fn_hz {
        Piece::Inner
    } else {
        Piece::Outer
    };
    branch_value(family, params, piece, x)
}

/// Sum of the spectrum and its four nearest aliases at multiples of `f_d`.
///
/// Equals 1 everywhere for a Nyquist pulse.
pub fn alias_sum(family: PulseFamily, params: &PulseParams, f_hz: f64) -> Result<f64> {
    if !family.is_nyquist() {
        return Err(Error::FamilyNotNyquist(family));
    }
    let fd = params.symbol_rate_hz;
    Ok((-2..=2)
        .map(|k| amplitude_spectrum(family, params, f_hz - k as f64 * fd))
        .sum())
}

/// Composite Simpson rule on `[a, b]` with `panels` (even) sub-intervals.
pub(crate) fn simpson<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, panels: usize) -> f64 {
    debug_assert!(panels >= 2 && panels.is_multiple_of(2));
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..panels {
        let v = g(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (g(a) + g(b) + 4.0 * odd + 2.0 * even)
}

/// Time-domain pulse `p(t) = (2/f_d) ∫₀^{f2} F(f) cos(2π f t) df`.
///
/// Each smooth branch is integrated separately with [`SIMPSON_PANELS`]
/// panels so that no panel straddles a kink. Normalized so `p(0) = 1` for the
/// Nyquist families.
pub fn ideal_pulse_value(family: PulseFamily, params: &PulseParams, t_s: f64) -> f64 {
    let edges = band_edges(params);
    let w = 2.0 * PI * t_s;
    let pass = simpson(|f| libm::cos(w * f), 0.0, edges.f1_hz, SIMPSON_PANELS);
    let mut total = pass;
    if params.rolloff > 0.0 {
        for (piece, a, b) in [
            (Piece::Inner, edges.f1_hz, edges.fn_hz),
            (Piece::Outer, edges.fn_hz, edges.f2_hz),
        ] {
            total += simpson(
                |f| branch_value(family, params, piece, f) * libm::cos(w * f),
                a,
                b,
                SIMPSON_PANELS,
            );
        }
    }
    2.0 / params.symbol_rate_hz * total
}
