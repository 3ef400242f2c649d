//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Run with `cargo test -p nyqshape-cli --test acceptance`.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nyqshape_cli::formats::parse_taps_csv;
use nyqshape::dft::dft_real;
use nyqshape::response::convolve;
use nyqshape::rng::SplitMix64;
use nyqshape::{
    alias_sum, amplitude_spectrum, design, frequency_response, ideal_pulse_value, isi_from_taps,
    sweep_alpha, sweep_delay, sweep_oversample, AnalysisSettings, DesignMethod, DesignSpec, Normalization,
    Parity, PulseFamily, PulseParams,
};
use tempfile::TempDir;

const ALPHAS: [f64; 5] = [0.0, 0.1, 0.22, 0.5, 1.0];

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

struct Outcome {
    checks: Vec<Check>,
}

impl Outcome {
    fn single(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            checks: vec![Check::new(name, pass, detail)],
        }
    }

    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn uniform(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn spec(family: PulseFamily, alpha: f64, m: u32, d: u32, normalization: Normalization) -> DesignSpec {
    DesignSpec {
        params: PulseParams::new(3.84e6, alpha).unwrap(),
        family,
        oversample_m: m,
        delay_symbols_d: d,
        normalization,
    }
}

fn nyquist_invariants() -> Outcome {
    let mut rng = SplitMix64::new(20_240_601);
    let (mut sym, mut alias, mut edge_ok, mut even_ok, mut mono_ok) = (0.0f64, 0.0f64, true, true, true);
    for alpha in ALPHAS {
        let p = PulseParams::new(3.84e6, alpha).unwrap();
        let b = p.nyquist_hz();
        for fam in PulseFamily::NYQUIST {
            for i in 0..=1000 {
                let x = alpha * b * i as f64 / 1000.0;
                let s = amplitude_spectrum(fam, &p, b + x) + amplitude_spectrum(fam, &p, b - x);
                sym = sym.max((s - 1.0).abs());
            }
            for _ in 0..1001 {
                let f = uniform(&mut rng, -7.68e6, 7.68e6);
                alias = alias.max((alias_sum(fam, &p, f).unwrap() - 1.0).abs());
            }
            edge_ok &= amplitude_spectrum(fam, &p, b) == 0.5 && amplitude_spectrum(fam, &p, -b) == 0.5;
            let mut prev = f64::INFINITY;
            for i in 0..=1000 {
                let f = 7.68e6 * i as f64 / 1000.0;
                let v = amplitude_spectrum(fam, &p, f);
                even_ok &= v == amplitude_spectrum(fam, &p, -f);
                mono_ok &= v <= prev;
                prev = v;
            }
        }
    }
    let pass = sym < 1e-12 && alias < 1e-12 && edge_ok && even_ok && mono_ok;
    Outcome::single(
        "Nyquist invariant suite",
        pass,
        format!(
            "max symmetry err {sym:.1e}, max alias err {alias:.1e}, F(B)=1/2 {edge_ok}, even {even_ok}, monotone {mono_ok}"
        ),
    )
}

fn zero_isi() -> Outcome {
    let p = PulseParams::new(3.84e6, 0.22).unwrap();
    let t = p.symbol_period_s();
    let (mut worst_zero, mut worst_peak) = (0.0f64, 0.0f64);
    for fam in PulseFamily::NYQUIST {
        worst_peak = worst_peak.max((ideal_pulse_value(fam, &p, 0.0) - 1.0).abs());
        for k in 1..=8 {
            for s in [-1.0, 1.0] {
                worst_zero = worst_zero.max(ideal_pulse_value(fam, &p, s * k as f64 * t).abs());
            }
        }
    }
    Outcome::single(
        "Zero-ISI oracle",
        worst_zero < 1e-7 && worst_peak < 1e-9,
        format!("max |p(kT)| {worst_zero:.1e} (< 1e-7), |p(0)-1| {worst_peak:.1e} (< 1e-9)"),
    )
}

fn design_path_agreement() -> Outcome {
    let mut checks = Vec::new();
    for (d, tol, name) in [(4u32, 5e-3, "design-path agreement D=4"), (8, 5e-4, "design-path agreement D=8")] {
        let (mut worst, mut worst_at, mut failing, mut total) = (0.0f64, String::new(), 0, 0);
        for fam in PulseFamily::NYQUIST {
            for alpha in [0.1, 0.22, 0.5, 1.0] {
                for m in [2, 4] {
                    let s = spec(fam, alpha, m, d, Normalization::UnitDcGain);
                    let a = design(&s, DesignMethod::FrequencySampling).unwrap();
                    let b = design(&s, DesignMethod::TimeSampling).unwrap();
                    let err = a.taps().iter().zip(b.taps()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    total += 1;
                    if err >= tol {
                        failing += 1;
                    }
                    if err > worst {
                        worst = err;
                        worst_at = format!("{fam} α={alpha} M={m}");
                    }
                }
            }
        }
        checks.push(Check::new(
            name,
            failing == 0,
            format!("{failing}/{total} cases at or above {tol:e}; worst {worst:.2e} ({worst_at})"),
        ));
    }
    Outcome { checks }
}

fn linear_phase() -> Outcome {
    let (mut phase_err, mut gd_err, mut gd_std, mut cases) = (0.0f64, 0.0f64, 0.0f64, 0);
    for fam in PulseFamily::ALL {
        for alpha in [0.1, 0.22, 0.5, 1.0] {
            for (m, d) in [(2, 2), (2, 10), (3, 4), (4, 6), (7, 2)] {
                for method in [DesignMethod::FrequencySampling, DesignMethod::TimeSampling] {
                    let f = design(&spec(fam, alpha, m, d, Normalization::UnitPeakResponse), method).unwrap();
                    let g = frequency_response(&f, 4096, f.sample_rate_hz() / 2.0).unwrap();
                    let half = (f.len() - 1) as f64 / 2.0;
                    for j in 0..g.len() {
                        if g.mag_db[j] > -100.0 {
                            phase_err = phase_err.max((g.phase_deg[j] + 180.0 * g.norm_freq[j] * half).abs());
                            gd_err = gd_err.max((g.group_delay_samples[j] - half).abs());
                        }
                    }
                    let pass: Vec<f64> = g
                        .f_hz
                        .iter()
                        .zip(&g.group_delay_samples)
                        .filter(|(fr, _)| **fr <= g.passband_edge_hz)
                        .map(|(_, v)| *v)
                        .collect();
                    let mean = pass.iter().sum::<f64>() / pass.len() as f64;
                    let var = pass.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / pass.len() as f64;
                    gd_std = gd_std.max(var.sqrt());
                    cases += 1;
                }
            }
        }
    }
    Outcome::single(
        "Linear-phase/group-delay law",
        phase_err < 1e-6 && gd_err < 1e-3 && gd_std < 1e-6,
        format!(
            "{cases} designs: max phase err {phase_err:.1e} deg (< 1e-6), max delay err {gd_err:.1e} (< 1e-3), \
             max passband delay std {gd_std:.1e} (< 1e-6)"
        ),
    )
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

fn fmt_list(v: &[f64], digits: usize) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.digits$}")).collect();
    parts.join(", ")
}

fn direction_suite() -> Outcome {
    let settings = AnalysisSettings::default();
    let base = DesignSpec::default();
    let mut checks = Vec::new();

    let r = sweep_alpha(&base, &[0.1, 0.5, 1.0], &settings).unwrap();
    let bw: Vec<f64> = r.records.iter().map(|x| x.occupied_bw_hz).collect();
    let lobe: Vec<f64> = r.records.iter().map(|x| x.metrics.main_lobe_edge_hz).collect();
    checks.push(Check::new(
        "occupied bandwidth strictly increases with α",
        strictly_increasing(&bw),
        format!("{} Hz", fmt_list(&bw, 0)),
    ));
    checks.push(Check::new(
        "main-lobe edge strictly increases with α",
        strictly_increasing(&lobe),
        format!("{} Hz", fmt_list(&lobe, 0)),
    ));

    let r = sweep_delay(&base, &[2, 4, 6, 8, 10], &settings).unwrap();
    let sidelobe: Vec<f64> = r
        .records
        .iter()
        .map(|x| x.metrics.peak_sidelobe_db.unwrap_or(f64::NEG_INFINITY))
        .collect();
    let isi: Vec<f64> = r.records.iter().map(|x| x.isi.peak_distortion).collect();
    checks.push(Check::new(
        "peak sidelobe non-increasing over D=2..10",
        non_increasing(&sidelobe),
        format!("{} dB", fmt_list(&sidelobe, 2)),
    ));
    checks.push(Check::new(
        "peak ISI distortion non-increasing over D=2..10",
        non_increasing(&isi),
        fmt_list(&isi, 4),
    ));

    let mut pass_max = Vec::new();
    let mut phase = Vec::new();
    for m in 2..=7u32 {
        let parity = if m % 2 == 0 { Parity::Even } else { Parity::Odd };
        let rec = &sweep_oversample(&base, &[m], parity, &settings).unwrap().records[0];
        pass_max.push(rec.passband_max_db);
        phase.push(rec.phase_at_nu1_deg.abs());
    }
    let worst = pass_max.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    checks.push(Check::new(
        "passband max = 0 dB for M=2..7",
        worst < 1e-9,
        format!("max |passband max| {worst:.1e} dB"),
    ));
    checks.push(Check::new(
        "|phase at ν=1| increases with M",
        strictly_increasing(&phase),
        format!("{} deg", fmt_list(&phase, 3)),
    ));
    Outcome { checks }
}

fn transform_consistency() -> Outcome {
    let mut rng = SplitMix64::new(99);
    let norms = [
        Normalization::UnitDcGain,
        Normalization::UnitEnergy,
        Normalization::UnitPeakTap,
        Normalization::UnitPeakResponse,
    ];
    let (mut parseval, mut dtft) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let fam = PulseFamily::ALL[(rng.next_u64() % 5) as usize];
        let alpha = uniform(&mut rng, 0.0, 1.0);
        let m = 2 + (rng.next_u64() % 6) as u32;
        let d = 1 + (rng.next_u64() % 10) as u32;
        let norm = norms[(rng.next_u64() % 4) as usize];
        let method = if rng.next_u64().is_multiple_of(2) {
            DesignMethod::FrequencySampling
        } else {
            DesignMethod::TimeSampling
        };
        let f = design(&spec(fam, alpha, m, d, norm), method).unwrap();
        let n = f.len();
        let x = dft_real(f.taps());
        let energy: f64 = f.taps().iter().map(|t| t * t).sum();
        let power = x.iter().map(|h| h.norm_sqr()).sum::<f64>() / n as f64;
        parseval = parseval.max((energy - power).abs());
        let half = (n - 1) / 2;
        let g = frequency_response(&f, half + 1, half as f64 * f.sample_rate_hz() / n as f64).unwrap();
        for k in 0..=half {
            dtft = dtft.max((g.response[k] - x[k]).norm());
        }
    }
    Outcome::single(
        "Transform self-consistency",
        parseval < 1e-10 && dtft < 1e-10,
        format!("20 random designs: Parseval err {parseval:.1e}, DFT vs DTFT err {dtft:.1e} (both < 1e-10)"),
    )
}

fn rrc_matched() -> Outcome {
    let s = spec(PulseFamily::RootRaisedCosine, 0.22, 2, 10, Normalization::UnitDcGain);
    let mut peaks = Vec::new();
    for method in [DesignMethod::FrequencySampling, DesignMethod::TimeSampling] {
        let f = design(&s, method).unwrap();
        let pair = convolve(f.taps(), f.taps());
        peaks.push(isi_from_taps(&pair, 2).unwrap().peak_distortion);
    }
    Outcome::single(
        "RRC matched-filter property",
        peaks[0] < 1e-3,
        format!(
            "peak distortion {:.2e} (< 1e-3); time-sampled design gives {:.2e}",
            peaks[0], peaks[1]
        ),
    )
}

fn run_cli(dir: &Path, args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_nyqshape"))
        .args(args)
        .current_dir(dir)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn cli_round_trip() -> Outcome {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let runs: [&[&str]; 4] = [
        &["design", "--family", "fsech", "--alpha", "0.35", "--oversample", "3", "--delay", "5", "--out"],
        &["analyze", "--points", "1024", "--out"],
        &["sweep", "--axis", "delay", "--points", "1024", "--out"],
        &["compare", "--points", "512", "--format", "json", "--out"],
    ];
    let mut identical = true;
    for (i, args) in runs.iter().enumerate() {
        let outs = [format!("run{i}a"), format!("run{i}b")];
        for out in &outs {
            let mut a = args.to_vec();
            a.push(out);
            identical &= run_cli(p, &a);
        }
        identical &= fs::read(p.join(&outs[0])).ok() == fs::read(p.join(&outs[1])).ok();
    }

    let wcdma = [
        "design", "--family", "fexp", "--alpha", "0.22", "--oversample", "2", "--delay", "4", "--norm", "dc", "--out",
        "wcdma.csv",
    ];
    let wrote = run_cli(p, &wcdma);
    let bytes = fs::read(p.join("wcdma.csv")).unwrap_or_default();
    let golden = include_bytes!("golden/fexp_a022_m2_d4_dc.csv");
    let golden_ok = wrote && bytes == golden;

    let s = spec(PulseFamily::FlippedExponential, 0.22, 2, 4, Normalization::UnitDcGain);
    let direct = design(&s, DesignMethod::FrequencySampling).unwrap();
    let round_trip = parse_taps_csv(&String::from_utf8_lossy(&bytes))
        .map(|back| back.len() == direct.len() && back.iter().zip(direct.taps()).all(|(a, b)| a.to_bits() == b.to_bits()))
        .unwrap_or(false);

    Outcome {
        checks: vec![
            Check::new("repeated runs byte-identical", identical, "design, analyze, sweep, compare"),
            Check::new("tap file round-trip bit-exact", round_trip, format!("{} taps", direct.len())),
            Check::new("golden WCDMA design", golden_ok, "fexp α=0.22 M=2 D=4 dc, tolerance 0"),
        ],
    }
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Nyquist invariant suite", nyquist_invariants, Duration::from_secs(5)),
        ("Zero-ISI oracle", zero_isi, Duration::from_secs(30)),
        ("Design-path agreement", design_path_agreement, Duration::from_secs(120)),
        ("Linear-phase/group-delay law", linear_phase, Duration::MAX),
        ("Directional trends", direction_suite, Duration::from_secs(60)),
        ("Transform self-consistency", transform_consistency, Duration::MAX),
        ("RRC matched-filter property", rrc_matched, Duration::MAX),
        ("CLI round-trip and determinism", cli_round_trip, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < budget;
        let pass = outcome.pass() && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if budget == Duration::MAX {
            format!("{:.2}s", elapsed.as_secs_f64())
        } else {
            format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs())
        };
        if outcome.checks.len() == 1 {
            println!("{} {name}: {} [{timing}]", mark(pass), outcome.checks[0].detail);
        } else {
            println!("{} {name} [{timing}]", mark(pass));
            for c in &outcome.checks {
                println!("    {} {}: {}", mark(c.pass), c.name, c.detail);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
