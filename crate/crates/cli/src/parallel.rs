//! Parallel evaluation of sweeps and comparisons. Points are computed on a
//! rayon pool and collected in input order, so output does not depend on
//! the thread count.

use nyqshape::sweep::{evaluate_point, family_row, sweep_points, tradeoff_cell, tradeoff_cells};
use nyqshape::{AnalysisSettings, DesignSpec, FamilyComparison, PulseFamily, SweepAxis, SweepReport};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const THREADS_VAR: &str = "NYQSHAPE_THREADS";

/// Worker count from `NYQSHAPE_THREADS`; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_VAR}='{v}': must be a positive integer"))),
        },
        Err(_) => Err(CliError::Usage(format!("{THREADS_VAR}: must be a positive integer"))),
    }
}

fn with_pool<R: Send>(threads: Option<usize>, job: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    Ok(pool.install(job))
}

pub fn sweep(
    axis: SweepAxis,
    base: &DesignSpec,
    values: &[f64],
    settings: &AnalysisSettings,
    threads: Option<usize>,
) -> Result<SweepReport> {
    let points = sweep_points(axis, base, values)?;
    let records = with_pool(threads, || {
        points
            .par_iter()
            .map(|(v, spec)| evaluate_point(spec, *v, settings))
            .collect::<nyqshape::Result<Vec<_>>>()
    })??;
    Ok(SweepReport {
        axis,
        base_spec: *base,
        records,
    })
}

/// Same result as `nyqshape::family_comparison`, evaluated in parallel.
pub fn comparison(
    base: &DesignSpec,
    tradeoff_family: PulseFamily,
    settings: &AnalysisSettings,
    threads: Option<usize>,
) -> Result<FamilyComparison> {
    base.validate()?;
    let cells: Vec<(u32, u32)> = tradeoff_cells().collect();
    let (rows, tradeoff) = with_pool(threads, || {
        let rows = PulseFamily::ALL
            .par_iter()
            .map(|&family| family_row(&DesignSpec { family, ..*base }, settings))
            .collect::<nyqshape::Result<Vec<_>>>();
        let tradeoff = cells
            .par_iter()
            .map(|&(d, m)| {
                let spec = DesignSpec {
                    family: tradeoff_family,
                    oversample_m: m,
                    delay_symbols_d: d,
                    ..*base
                };
                tradeoff_cell(&spec, settings)
            })
            .collect::<nyqshape::Result<Vec<_>>>();
        (rows, tradeoff)
    })?;
    Ok(FamilyComparison {
        params: base.params,
        oversample_m: base.oversample_m,
        delay_symbols_d: base.delay_symbols_d,
        rows: rows?,
        tradeoff_family,
        tradeoff: tradeoff?,
    })
}
