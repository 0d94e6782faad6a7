use std::io::Write;
use std::time::Instant;

use mrdft::io::{
    encode_level_pgm, encode_spectrum, read_signal, Padding, PgmScale, SignalFile, SignalFormat,
    SpectrumFormat,
};
use mrdft::opcount::{self, ComplexityReport};
use mrdft::oracle::{level_errors, mrdft_direct, mrdft_per_level_fft_with_plan};
use mrdft::signal::seeded_signal;
use mrdft::{make_plan, mrdft_fast_with, Execution, Layout, OpCounter, Plan};
use serde::Serialize;

use crate::args::{
    BenchArgs, CountArgs, CountFormat, InputFormat, LayoutArg, Method, OutputFormat, ScaleArg,
    SignalInput, SpectrogramArgs, TransformArgs, VerifyArgs,
};

/// Largest size the O(N^2) reference is run at.
pub const MAX_DIRECT_LEVELS: usize = 12;

#[derive(Debug)]
pub enum Failure {
    /// Bad input, bad flags or I/O trouble. Exit code 1.
    Usage(String),
    /// The fast transform disagreed with the reference. Exit code 2.
    Verification(String),
}

impl From<mrdft::Error> for Failure {
    fn from(e: mrdft::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(input: &SignalInput) -> Result<SignalFile<f64>, Failure> {
    let format = match input.format {
        InputFormat::Csv => SignalFormat::Csv,
        InputFormat::Raw64 => SignalFormat::Raw64,
    };
    let padding = if input.pad_zeros {
        Padding::Zeros
    } else {
        Padding::Reject
    };
    let file = read_signal(&input.input, format, padding)?;
    if let Some(len) = file.padded_from {
        eprintln!("padded {len} samples to {}", file.samples.len());
    }
    Ok(file)
}

fn write_out(path: Option<&std::path::Path>, bytes: &[u8]) -> Outcome {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn transform(args: &TransformArgs, exec: Execution) -> Outcome {
    let signal = load(&args.signal)?;
    let plan: Plan = make_plan(signal.m())?;
    let layout = match args.layout {
        LayoutArg::Natural => Layout::Natural,
        LayoutArg::Bitrev => Layout::BitReversed,
    };
    let mut counter = OpCounter::new(plan.m());
    let spectrum = mrdft_fast_with(&signal.samples, &plan, Some(&mut counter), layout, exec)?;

    eprintln!("m = {}, n = {}", plan.m(), plan.n());
    for i in 1..=plan.m() {
        eprintln!(
            "iteration {i}: mults {}, nontrivial {}, adds {}",
            counter.mults(i),
            counter.nontrivial(i),
            counter.adds(i)
        );
    }

    let format = match args.out_format {
        OutputFormat::Json => SpectrumFormat::Json,
        OutputFormat::Csv => SpectrumFormat::Csv,
    };
    write_out(args.output.as_deref(), &encode_spectrum(&spectrum, format))
}

pub fn verify(args: &VerifyArgs, exec: Execution) -> Outcome {
    let m = args.m;
    if !(1..=MAX_DIRECT_LEVELS).contains(&m) {
        return Err(Failure::Usage(format!(
            "--m must be in [1, {MAX_DIRECT_LEVELS}] for verification, got {m}"
        )));
    }
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let mut plan: Plan = make_plan(m)?;
    if args.inject_fault {
        if m < 3 {
            return Err(Failure::Usage("--inject-fault needs m >= 3".into()));
        }
        plan = plan.with_flipped_twiddle(m, 1);
    }

    let mut max_err = vec![0.0f64; m];
    let mut first_bad: Option<(u64, usize, f64)> = None;
    let mut count_mismatch: Option<String> = None;
    for t in 0..args.trials {
        let x = seeded_signal::<f64>(plan.n(), args.seed.wrapping_add(t));
        let mut counter = OpCounter::new(m);
        let fast = mrdft_fast_with(&x, &plan, Some(&mut counter), Layout::Natural, exec)?;
        let direct = mrdft_direct(&x, m)?;
        for (idx, e) in level_errors(&fast, &direct).into_iter().enumerate() {
            max_err[idx] = max_err[idx].max(e);
            if (e.is_nan() || e > 1e-10) && first_bad.is_none() {
                first_bad = Some((t, idx + 1, e));
            }
        }
        if count_mismatch.is_none() {
            count_mismatch = compare_counts(m, &counter)?;
        }
    }

    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "m = {m}, n = {}, trials = {}, seed = {}",
        plan.n(),
        args.trials,
        args.seed
    )?;
    writeln!(out, "{:>5} {:>14}", "level", "max rel err")?;
    for (idx, e) in max_err.iter().enumerate() {
        writeln!(out, "{:>5} {:>14.3e}", idx + 1, e)?;
    }
    let overall = max_err.iter().cloned().fold(0.0, f64::max);
    writeln!(
        out,
        "max relative L2 error: {overall:.3e} (tolerance 1e-10)"
    )?;
    match &count_mismatch {
        None => writeln!(out, "operation counts: instrumented == analytic")?,
        Some(msg) => writeln!(out, "operation counts: MISMATCH ({msg})")?,
    }
    out.flush()?;

    if let Some((t, level, e)) = first_bad {
        return Err(Failure::Verification(format!(
            "trial {t}, level {level}: relative error {e:.3e} exceeds 1e-10"
        )));
    }
    if let Some(msg) = count_mismatch {
        return Err(Failure::Verification(format!(
            "operation counts differ: {msg}"
        )));
    }
    Ok(())
}

fn compare_counts(m: usize, counter: &OpCounter) -> Result<Option<String>, Failure> {
    for i in 1..=m {
        let want = (
            opcount::mults_iter(m, i)?,
            opcount::nontrivial_iter(m, i)?,
            opcount::adds_iter(m, i)?,
        );
        let got = (counter.mults(i), counter.nontrivial(i), counter.adds(i));
        if got != want {
            return Ok(Some(format!(
                "iteration {i}: counted (mults, nontrivial, adds) = {got:?}, expected {want:?}"
            )));
        }
    }
    Ok(None)
}

fn ratio_text(r: &ComplexityReport) -> String {
    format!(
        "{}/{} ({:.4})",
        r.savings.numer(),
        r.savings.denom(),
        r.savings_f64()
    )
}

pub fn count(args: &CountArgs) -> Outcome {
    let mut out = std::io::stdout().lock();
    match (args.m, args.max_m) {
        (Some(m), _) => {
            let r = opcount::report(m)?;
            match args.format {
                CountFormat::Json => {
                    serde_json::to_writer(&mut out, &r)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    writeln!(out)?;
                }
                CountFormat::Table => {
                    writeln!(
                        out,
                        "{:>3} {:>14} {:>14} {:>14} {:>14}  source",
                        "i", "mults", "nontrivial", "adds", "baseline"
                    )?;
                    for row in &r.rows {
                        let source = match row.source {
                            opcount::RowSource::Analytic => "analytic",
                            opcount::RowSource::Instrumented => "instrumented",
                        };
                        writeln!(
                            out,
                            "{:>3} {:>14} {:>14} {:>14} {:>14}  {source}",
                            row.i, row.mults, row.nontrivial, row.adds, row.baseline_mults
                        )?;
                    }
                    writeln!(
                        out,
                        "{:>3} {:>14} {:>14} {:>14} {:>14}",
                        "sum", r.total_mults, r.total_nontrivial, r.total_adds, r.baseline_mults
                    )?;
                    writeln!(out, "ratio fast/baseline mults: {}", ratio_text(&r))?;
                }
            }
        }
        (None, Some(max_m)) => {
            if max_m == 0 || max_m > opcount::MAX_REPORT_LEVELS {
                return Err(Failure::Usage(format!(
                    "--max-m must be in [1, {}], got {max_m}",
                    opcount::MAX_REPORT_LEVELS
                )));
            }
            let reports = (1..=max_m)
                .map(opcount::report)
                .collect::<mrdft::Result<Vec<_>>>()?;
            match args.format {
                CountFormat::Json => {
                    serde_json::to_writer(&mut out, &reports)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    writeln!(out)?;
                }
                CountFormat::Table => {
                    writeln!(
                        out,
                        "{:>3} {:>14} {:>14} {:>14} {:>14}  ratio",
                        "m", "mults", "nontrivial", "adds", "baseline"
                    )?;
                    for r in &reports {
                        writeln!(
                            out,
                            "{:>3} {:>14} {:>14} {:>14} {:>14}  {}",
                            r.m,
                            r.total_mults,
                            r.total_nontrivial,
                            r.total_adds,
                            r.baseline_mults,
                            ratio_text(r)
                        )?;
                    }
                }
            }
        }
        (None, None) => unreachable!("clap requires one of --m and --max-m"),
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BenchRecord {
    m: usize,
    n: usize,
    reps: u32,
    seed: u64,
    threads: usize,
    results: Vec<MethodTiming>,
}

#[derive(Serialize)]
struct MethodTiming {
    method: &'static str,
    median_seconds: f64,
    /// Counted complex multiplications; `null` for the uninstrumented direct method.
    mults: Option<u64>,
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        0.5 * (samples[mid - 1] + samples[mid])
    }
}

pub fn bench(args: &BenchArgs, exec: Execution) -> Outcome {
    let m = args.m;
    let mut methods = args.methods.clone();
    methods.dedup();
    if methods.contains(&Method::Direct) && m > MAX_DIRECT_LEVELS {
        return Err(Failure::Usage(format!(
            "refusing the direct method for m = {m}; it is limited to m <= {MAX_DIRECT_LEVELS}"
        )));
    }
    let plan: Plan = make_plan(m)?;
    let x = seeded_signal::<f64>(plan.n(), args.seed);

    let mut results = Vec::new();
    for method in methods {
        let mut counter = OpCounter::new(m);
        let mut times = Vec::with_capacity(args.reps as usize);
        for rep in 0..args.reps {
            let tally = if rep == 0 { Some(&mut counter) } else { None };
            let start = Instant::now();
            let y = match method {
                Method::Fast => mrdft_fast_with(&x, &plan, tally, Layout::Natural, exec)?,
                Method::Plf => mrdft_per_level_fft_with_plan(&x, &plan, tally)?,
                Method::Direct => mrdft_direct(&x, m)?,
            };
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(y);
        }
        let med = median(times);
        eprintln!(
            "{:>6}: median {:.6} s over {} reps",
            method.name(),
            med,
            args.reps
        );
        results.push(MethodTiming {
            method: method.name(),
            median_seconds: med,
            mults: (method != Method::Direct).then(|| counter.total().mults),
        });
    }

    let record = BenchRecord {
        m,
        n: plan.n(),
        reps: args.reps,
        seed: args.seed,
        threads: rayon::current_num_threads(),
        results,
    };
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, &record).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn spectrogram(args: &SpectrogramArgs, exec: Execution) -> Outcome {
    let signal = load(&args.signal)?;
    let plan: Plan = make_plan(signal.m())?;
    let spectrum = mrdft_fast_with(&signal.samples, &plan, None, Layout::Natural, exec)?;
    let scale = match args.scale {
        ScaleArg::Linear => PgmScale::Linear,
        ScaleArg::Log => PgmScale::Log,
    };
    let bytes = encode_level_pgm(&spectrum, args.level, scale)?;
    write_out(Some(&args.output), &bytes)
}
