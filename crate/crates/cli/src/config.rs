//! `key = value` parameter files and flag/config resolution.

use std::collections::BTreeMap;
use std::path::Path;

use nyqshape::{
    AnalysisSettings, DesignMethod, DesignSpec, Normalization, PulseFamily, PulseParams, SweepAxis,
};

use crate::args::{AnalysisFlags, Format, SpecFlags};
use crate::error::{CliError, Result};

const KEYS: [&str; 13] = [
    "family",
    "alpha",
    "symbol-rate",
    "oversample",
    "delay",
    "norm",
    "method",
    "points",
    "threshold",
    "axis",
    "values",
    "format",
    "tradeoff-family",
];

/// Parsed config file. Blank lines and `#` comments are ignored; keys use
/// the long flag names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key '{key}' (known: {})",
                    i + 1,
                    KEYS.join(", ")
                )));
            }
            if entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("config line {}: duplicate key '{key}'", i + 1)));
            }
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(ConfigFile::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                ConfigFile::parse(&text)
            }
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// The flag value if given, otherwise the config entry.
    pub fn pick<'a>(&'a self, flag: &'a Option<String>, key: &str) -> Option<&'a str> {
        flag.as_deref().or_else(|| self.get(key))
    }
}

fn number(key: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--{key}: expected a finite number, got '{raw}'")))
}

fn count(key: &str, raw: &str) -> Result<u32> {
    raw.trim()
        .parse::<u32>()
        .map_err(|_| CliError::Usage(format!("--{key}: expected a non-negative integer, got '{raw}'")))
}

fn family(key: &str, raw: &str) -> Result<PulseFamily> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("--{key} '{raw}': must be one of rc, rrc, fexp, fsech, farcsech")))
}

pub fn resolve_spec(flags: &SpecFlags, cfg: &ConfigFile) -> Result<(DesignSpec, DesignMethod)> {
    let base = DesignSpec::default();
    let fam = match cfg.pick(&flags.family, "family") {
        Some(raw) => family("family", raw)?,
        None => base.family,
    };
    let alpha = match cfg.pick(&flags.alpha, "alpha") {
        Some(raw) => number("alpha", raw)?,
        None => base.params.rolloff(),
    };
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Usage(format!("--alpha {alpha} out of range: α must lie in [0, 1]")));
    }
    let rate = match cfg.pick(&flags.symbol_rate, "symbol-rate") {
        Some(raw) => number("symbol-rate", raw)?,
        None => base.params.symbol_rate_hz(),
    };
    if rate <= 0.0 {
        return Err(CliError::Usage(format!("--symbol-rate {rate} out of range: must be > 0 Hz")));
    }
    let m = match cfg.pick(&flags.oversample, "oversample") {
        Some(raw) => count("oversample", raw)?,
        None => base.oversample_m,
    };
    if m < 2 {
        return Err(CliError::Usage(format!("--oversample {m} out of range: M must be >= 2")));
    }
    let d = match cfg.pick(&flags.delay, "delay") {
        Some(raw) => count("delay", raw)?,
        None => base.delay_symbols_d,
    };
    if d < 1 {
        return Err(CliError::Usage(format!("--delay {d} out of range: D must be >= 1")));
    }
    let normalization = match cfg.pick(&flags.norm, "norm") {
        Some(raw) => raw.parse::<Normalization>().map_err(|_| {
            CliError::Usage(format!("--norm '{raw}': must be one of dc, energy, peak-tap, peak-response"))
        })?,
        None => base.normalization,
    };
    let method = match cfg.pick(&flags.method, "method") {
        Some(raw) => raw
            .parse::<DesignMethod>()
            .map_err(|_| CliError::Usage(format!("--method '{raw}': must be frequency or time")))?,
        None => DesignMethod::default(),
    };
    let spec = DesignSpec {
        params: PulseParams::new(rate, alpha)?,
        family: fam,
        oversample_m: m,
        delay_symbols_d: d,
        normalization,
    };
    Ok((spec, method))
}

pub fn resolve_analysis(flags: &AnalysisFlags, cfg: &ConfigFile, method: DesignMethod) -> Result<AnalysisSettings> {
    let base = AnalysisSettings::default();
    let points = match cfg.pick(&flags.points, "points") {
        Some(raw) => count("points", raw)? as usize,
        None => base.grid_points,
    };
    if points < 512 {
        return Err(CliError::Usage(format!("--points {points} out of range: need at least 512")));
    }
    let threshold = match cfg.pick(&flags.threshold, "threshold") {
        Some(raw) => number("threshold", raw)?,
        None => base.stop_threshold_db,
    };
    if threshold >= 0.0 {
        return Err(CliError::Usage(format!("--threshold {threshold} out of range: must be < 0 dB")));
    }
    Ok(AnalysisSettings {
        grid_points: points,
        stop_threshold_db: threshold,
        method,
    })
}

pub fn resolve_format(flag: Option<Format>, cfg: &ConfigFile) -> Result<Format> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match cfg.get("format") {
        None | Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(CliError::Usage(format!("format '{other}': must be csv or json"))),
    }
}

pub fn resolve_axis(flag: &Option<String>, cfg: &ConfigFile) -> Result<SweepAxis> {
    match cfg.pick(flag, "axis") {
        None => Err(CliError::Usage(
            "--axis is required: alpha, delay, oversample-even or oversample-odd".into(),
        )),
        Some("alpha") => Ok(SweepAxis::Alpha),
        Some("delay") => Ok(SweepAxis::Delay),
        Some("oversample-even") => Ok(SweepAxis::OversampleEven),
        Some("oversample-odd") => Ok(SweepAxis::OversampleOdd),
        Some(other) => Err(CliError::Usage(format!(
            "--axis '{other}': must be alpha, delay, oversample-even or oversample-odd"
        ))),
    }
}

pub fn resolve_values(flag: &Option<String>, cfg: &ConfigFile, axis: SweepAxis) -> Result<Vec<f64>> {
    use nyqshape::sweep::{DEFAULT_ALPHAS, DEFAULT_DELAYS, DEFAULT_EVEN_M, DEFAULT_ODD_M};
    let Some(raw) = cfg.pick(flag, "values") else {
        let widen = |v: &[u32]| v.iter().map(|&x| x as f64).collect();
        return Ok(match axis {
            SweepAxis::Alpha => DEFAULT_ALPHAS.to_vec(),
            SweepAxis::Delay => widen(&DEFAULT_DELAYS),
            SweepAxis::OversampleEven => widen(&DEFAULT_EVEN_M),
            SweepAxis::OversampleOdd => widen(&DEFAULT_ODD_M),
        });
    };
    let values = raw.split(',').map(|v| number("values", v)).collect::<Result<Vec<_>>>()?;
    for &v in &values {
        match axis {
            SweepAxis::Alpha if !(0.0..=1.0).contains(&v) => {
                return Err(CliError::Usage(format!("--values: α = {v} out of range [0, 1]")));
            }
            SweepAxis::Delay if v < 1.0 || v.fract() != 0.0 => {
                return Err(CliError::Usage(format!("--values: D = {v} must be an integer >= 1")));
            }
            SweepAxis::OversampleEven if v < 2.0 || v.fract() != 0.0 || v % 2.0 != 0.0 => {
                return Err(CliError::Usage(format!("--values: M = {v} must be an even integer >= 2")));
            }
            SweepAxis::OversampleOdd if v < 3.0 || v.fract() != 0.0 || v % 2.0 != 1.0 => {
                return Err(CliError::Usage(format!("--values: M = {v} must be an odd integer >= 3")));
            }
            _ => {}
        }
    }
    Ok(values)
}

pub fn resolve_tradeoff_family(flag: &Option<String>, cfg: &ConfigFile, fallback: PulseFamily) -> Result<PulseFamily> {
    match cfg.pick(flag, "tradeoff-family") {
        Some(raw) => family("tradeoff-family", raw),
        None => Ok(fallback),
    }
}
