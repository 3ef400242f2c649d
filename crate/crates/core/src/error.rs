use core::fmt;

use crate::spectrum::PulseFamily;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in design and analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated its documented bound.
    InvalidParams(&'static str),
    /// Design spec rejected (M < 2 or D < 1).
    InvalidSpec(&'static str),
    /// The family does not satisfy the Nyquist criterion on its own.
    FamilyNotNyquist(PulseFamily),
    /// Transform output failed the symmetry / realness check.
    NumericalAsymmetry { residue: f64, peak: f64 },
    /// Normalization divisor or center tap is zero.
    DegenerateFilter,
    /// Frequency range outside `(0, f_s/2]`.
    InvalidRange { f_max_hz: f64, nyquist_hz: f64 },
    /// Too few grid points for lobe detection.
    GridTooCoarse { points: usize, required: usize },
    /// Oversampling factor has the wrong parity for the requested sweep.
    ParityViolation { m: u32 },
    InvalidArg(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid pulse parameters: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid design spec: {msg}"),
            Error::FamilyNotNyquist(fam) => {
                write!(f, "{} is not a Nyquist pulse; square it first", fam.name())
            }
            Error::NumericalAsymmetry { residue, peak } => write!(
                f,
                "transform residue {residue:e} too large relative to peak tap {peak:e}"
            ),
            Error::DegenerateFilter => write!(f, "degenerate filter: zero normalization divisor"),
            Error::InvalidRange {
                f_max_hz,
                nyquist_hz,
            } => write!(
                f,
                "maximum frequency {f_max_hz} Hz must lie in (0, {nyquist_hz}] Hz"
            ),
            Error::GridTooCoarse { points, required } => {
                write!(f, "grid has {points} points, need at least {required}")
            }
            Error::ParityViolation { m } => {
                write!(f, "oversampling factor {m} has the wrong parity for this sweep")
            }
            Error::InvalidArg(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
