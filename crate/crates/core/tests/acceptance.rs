//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one `PASS`/`FAIL` line, whatever the capture settings.
//! The process exits non-zero if any criterion fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use groverdd::bits::Bitstring;
use groverdd::circuit::{busy_fraction, GateDurations, NativeKind};
use groverdd::dd::{catalog, make_tn, pad_circuit, tn_block_phases, tn_direct_phases, DdOption, PiFraction, TN_PULSE_COUNTS};
use groverdd::grover::{ideal_success, optimal_iterations};
use groverdd::harness::{
    bisect_sigma_z, emit_results, run_experiment, scheduled_grover, wilson_ci, ExperimentConfig, CONFIDENCE,
    REFERENCE_SIGMA_Z,
};
use groverdd::noise::{simulate_timed, CalibrationSet, NoiseModel};
use groverdd::qsim::ops;

const A1_TOL: f64 = 1e-9;
const A1_BUDGET: Duration = Duration::from_secs(60);
const A2_IDENTITY_TOL: f64 = 1e-10;
const A2_TV_TOL: f64 = 1e-9;
const A2_BUDGET: Duration = Duration::from_secs(120);
const A3_TOL: f64 = 1e-12;
const A4_PARITY: i64 = 1;
const A4_BUDGET: Duration = Duration::from_secs(30);
const A5_FREE_CEILING: f64 = 0.6;
const A5_MIN_GAIN: f64 = 0.05;
const A5_SHOTS: u64 = 10_000;
const A5_ENSEMBLE: usize = 400;
const A5_BUDGET: Duration = Duration::from_secs(600);
const A7_UNIFORM_TOL: f64 = 1e-12;
const A8_TOL: f64 = 5e-4;
/// Two-sided 99% normal quantile, written out rather than computed.
const A8_Z: f64 = 2.575_829_303_548_900_4;

const TARGET_5: &str = "01011";
const TARGET_6: &str = "010110";

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

type Outcome = Result<Verdict, groverdd::Error>;
type Criterion = (&'static str, fn() -> Outcome);

fn bits(s: &str) -> Bitstring {
    s.parse().expect("literal bitstring")
}

fn a1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for n in 2..=6 {
        let target = Bitstring::from_index((1 << n) / 3, n);
        let iters: Vec<usize> = (1..=optimal_iterations(n)?).collect();
        let res = run_experiment(&ExperimentConfig::new(target, iters))?;
        for r in &res.records {
            worst = worst.max((r.success_prob - ideal_success(n, r.iterations)).abs());
            cells += 1;
        }
    }
    let elapsed = start.elapsed();
    Ok(verdict(
        worst <= A1_TOL && elapsed < A1_BUDGET,
        format!("{cells} cells, max |p - sin^2((2k+1)theta)| = {worst:.2e}, {elapsed:.1?}"),
    ))
}

fn a2() -> Outcome {
    let start = Instant::now();
    let target = bits(TARGET_5);
    let durations = GateDurations::default();
    let tc = scheduled_grover(&target, 4, &durations)?;
    let model = NoiseModel::ideal(5);
    let zero = vec![0.0; 5];
    let bare = simulate_timed(&tc, &model, &zero)?;
    let pulse = durations.native(NativeKind::X)?;
    let mut worst_id: f64 = 0.0;
    let mut worst_tv: f64 = 0.0;
    for seq in catalog() {
        worst_id = worst_id.max(ops::phase_distance(&seq.ideal_propagator(), &ops::identity(2)));
        let (padded, _) = pad_circuit(&tc, &seq, pulse)?;
        worst_tv = worst_tv.max(simulate_timed(&padded, &model, &zero)?.total_variation(&bare));
    }
    let elapsed = start.elapsed();
    Ok(verdict(
        worst_id <= A2_IDENTITY_TOL && worst_tv < A2_TV_TOL && elapsed < A2_BUDGET,
        format!("identity error {worst_id:.2e}, padded vs bare TV {worst_tv:.2e}, {elapsed:.1?}"),
    ))
}

fn a3() -> Outcome {
    let mut worst: f64 = 0.0;
    for &n in &TN_PULSE_COUNTS {
        let direct = tn_direct_phases(n);
        let blocks = tn_block_phases(n);
        for (d, b) in direct.iter().zip(&blocks) {
            let diff = ops::max_abs_diff(&ops::pi_pulse(d.reduced().radians()), &ops::pi_pulse(b.radians()));
            worst = worst.max(diff);
        }
        make_tn(n)?;
    }
    let f = PiFraction::new;
    let t4 = [f(0, 1), f(0, 1), f(1, 1), f(1, 1)];
    let t6 = [f(0, 1), f(1, 3), f(0, 1), f(1, 1), f(4, 3), f(1, 1)];
    let examples = make_tn(4)?.phases() == t4 && make_tn(6)?.phases() == t6;
    Ok(verdict(
        worst <= A3_TOL && examples,
        format!("max pulse difference {worst:.2e} over T2..T12, T4/T6 examples match: {examples}"),
    ))
}

fn a4() -> Outcome {
    let start = Instant::now();
    let durations = GateDurations::default();
    let tc = scheduled_grover(&bits(TARGET_5), 4, &durations)?;
    let busy = busy_fraction(&tc);
    let pulse = durations.native(NativeKind::X)?;
    let mut counts = std::collections::BTreeMap::new();
    for seq in catalog() {
        let (_, report) = pad_circuit(&tc, &seq, pulse)?;
        counts.insert(seq.name().to_string(), report.sequences_per_qubit);
    }
    let within = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(&x, &y)| (x as i64 - y as i64).abs() <= A4_PARITY);
    let parity = within(&counts["T2"], &counts["CPMG"]) && within(&counts["T4"], &counts["XY4"]);
    let totals: Vec<u64> = TN_PULSE_COUNTS.iter().map(|n| counts[&format!("T{n}")].iter().sum()).collect();
    let non_increasing = totals.windows(2).all(|w| w[1] <= w[0]);
    // Pairs (busier, idler) where the busier qubit got strictly more sequences.
    let violations = |c: &[u64]| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 0..c.len() {
            for b in 0..c.len() {
                if busy[a] > busy[b] && c[a] > c[b] {
                    v.push((a, b));
                }
            }
        }
        v
    };
    let mut broken = Vec::new();
    for (name, c) in &counts {
        let v = violations(c);
        if !v.is_empty() {
            broken.push(format!("{name} {c:?} busier>idler {v:?}"));
        }
    }
    let mut summed = vec![0u64; busy.len()];
    for c in counts.values() {
        for (s, x) in summed.iter_mut().zip(c) {
            *s += x;
        }
    }
    let elapsed = start.elapsed();
    let busy_txt: Vec<String> = busy.iter().map(|b| format!("{b:.3}")).collect();
    let mut detail = format!(
        "(i) parity {parity}; (ii) T2..T12 totals {totals:?}; (iii) busy [{}]; ",
        busy_txt.join(", ")
    );
    if broken.is_empty() {
        detail.push_str("all sequences anti-monotone");
    } else {
        detail.push_str(&format!("violated by {}", broken.join("; ")));
        detail.push_str(&format!(
            "; summed over sequences {summed:?} anti-monotone: {}",
            violations(&summed).is_empty()
        ));
    }
    detail.push_str(&format!(", {elapsed:.1?}"));
    Ok(verdict(parity && non_increasing && broken.is_empty() && elapsed < A4_BUDGET, detail))
}

fn a5() -> Outcome {
    let start = Instant::now();
    let target = bits(TARGET_5);
    let mut dd = vec![DdOption::Free, "XY4".parse()?];
    for n in TN_PULSE_COUNTS {
        dd.push(format!("T{n}").parse()?);
    }
    let cfg = ExperimentConfig {
        dd,
        shots: A5_SHOTS,
        sigma_z: REFERENCE_SIGMA_Z,
        exact: false,
        ensemble: A5_ENSEMBLE,
        ..ExperimentConfig::new(target.clone(), vec![3])
    };
    let res = run_experiment(&cfg)?;
    let free = res.record(3, "free").expect("free cell");
    let mut ok = free.model_prob < A5_FREE_CEILING;
    let mut parts = vec![format!(
        "sigma_z {REFERENCE_SIGMA_Z:.3e}: free {:.4} [{:.4}, {:.4}]",
        free.model_prob, free.ci_low, free.ci_high
    )];
    for r in res.records.iter().filter(|r| r.dd != "free") {
        let good = r.model_prob - free.model_prob >= A5_MIN_GAIN && r.ci_low > free.ci_high;
        ok &= good;
        parts.push(format!("{} {:.4} [{:.4}, {:.4}]", r.dd, r.model_prob, r.ci_low, r.ci_high));
    }
    // The documented constant must sit at or below the bisection result, so
    // the free success it gives is on the low side of the goal.
    let found = bisect_sigma_z(&target, 3, 0.55, 1e6, A5_ENSEMBLE, 0, 12)?;
    ok &= (REFERENCE_SIGMA_Z..1.05 * REFERENCE_SIGMA_Z).contains(&found);
    parts.push(format!("bisection {found:.4e}"));
    let elapsed = start.elapsed();
    ok &= elapsed < A5_BUDGET;
    parts.push(format!("{elapsed:.1?}"));
    Ok(verdict(ok, parts.join(", ")))
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &x)| if x > best.1 { (i, x) } else { best })
        .0
}

fn unimodal(v: &[f64]) -> bool {
    let peak = argmax(v);
    v[..=peak].windows(2).all(|w| w[0] <= w[1]) && v[peak..].windows(2).all(|w| w[0] >= w[1])
}

fn a6() -> Outcome {
    let cal = CalibrationSet::bundled("pittsburgh-5q")?;
    let success = |cal: CalibrationSet| -> Result<Vec<f64>, groverdd::Error> {
        let cfg = ExperimentConfig {
            calibration: Some(cal),
            ..ExperimentConfig::new(bits(TARGET_5), vec![1, 2, 3, 4])
        };
        Ok(run_experiment(&cfg)?.records.iter().map(|r| r.success_prob).collect())
    };
    let base = success(cal.clone())?;
    let scaled = success(cal.with_twoq_scaled(4.0)?)?;
    let (peak, peak4) = (argmax(&base) + 1, argmax(&scaled) + 1);
    let fmt = |v: &[f64]| v.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>().join(", ");
    Ok(verdict(
        unimodal(&base) && peak <= 4 && peak4 <= peak,
        format!("k=1..4 [{}] peak {peak}; 2Q x4 [{}] peak {peak4}", fmt(&base), fmt(&scaled)),
    ))
}

fn a7() -> Outcome {
    let target = bits(TARGET_6);
    let uniform = run_experiment(&ExperimentConfig::new(target.clone(), vec![0]))?.records[0].success_prob;
    let uniform_err = (uniform - 1.0 / 64.0).abs();
    let cfg = ExperimentConfig {
        calibration: Some(CalibrationSet::bundled("pittsburgh-6q")?),
        ..ExperimentConfig::new(target.clone(), vec![1, 2])
    };
    let mut ok = uniform_err <= A7_UNIFORM_TOL;
    let mut parts = vec![format!("k=0 |p - 1/64| = {uniform_err:.1e}")];
    for r in &run_experiment(&cfg)?.records {
        let p = r.distribution.probabilities();
        let t = target.index();
        let runner_up = p.iter().enumerate().filter(|&(i, _)| i != t).map(|(_, &x)| x).fold(0.0, f64::max);
        ok &= p[t] > runner_up;
        parts.push(format!("k={} target {:.4} next {:.4}", r.iterations, p[t], runner_up));
    }
    Ok(verdict(ok, parts.join(", ")))
}

/// Roots of the score-test equation `(p̂ − p)² = z² p(1 − p)/n` by bisection.
fn score_interval(successes: u64, shots: u64) -> (f64, f64) {
    let n = shots as f64;
    let hat = successes as f64 / n;
    let f = |p: f64| (hat - p).powi(2) - A8_Z * A8_Z * p * (1.0 - p) / n;
    let root = |mut inside: f64, mut outside: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if f(mid) <= 0.0 {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    };
    let low = if successes == 0 { 0.0 } else { root(hat, 0.0) };
    let high = if successes == shots { 1.0 } else { root(hat, 1.0) };
    (low, high)
}

fn a8() -> Outcome {
    let mut cases = Vec::new();
    for &shots in &[1u64, 10, 100, 1000, 10_000] {
        for frac in [0.0, 0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
            cases.push((((shots as f64) * frac).round() as u64, shots));
        }
    }
    let mut worst: f64 = 0.0;
    for &(s, n) in &cases {
        let (lo, hi) = wilson_ci(s, n, CONFIDENCE);
        let (olo, ohi) = score_interval(s, n);
        worst = worst.max((lo - olo).abs()).max((hi - ohi).abs());
    }
    let boundaries = cases.contains(&(0, 10_000)) && cases.contains(&(10_000, 10_000));
    Ok(verdict(
        worst <= A8_TOL && boundaries && cases.len() == 50,
        format!("{} cases, max deviation from score-test roots {worst:.2e}", cases.len()),
    ))
}

fn sweep_into(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, groverdd::Error> {
    let dd = ["free", "CPMG", "XY4", "T2", "T8"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<DdOption>, _>>()?;
    let cfg = ExperimentConfig {
        dd,
        calibration: Some(CalibrationSet::bundled("pittsburgh-5q")?),
        sigma_z: REFERENCE_SIGMA_Z,
        exact: false,
        ensemble: 32,
        seed: 2024,
        ..ExperimentConfig::new(bits(TARGET_5), vec![1, 2, 3, 4])
    };
    let mut files = Vec::new();
    for path in emit_results(&run_experiment(&cfg)?, dir)? {
        let bytes = std::fs::read(&path).map_err(|e| groverdd::Error::Input(e.to_string()))?;
        files.push((path.file_name().unwrap().to_string_lossy().into_owned(), bytes));
    }
    Ok(files)
}

fn a9() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = sweep_into(a.path())?;
    let second = sweep_into(b.path())?;
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    Ok(verdict(
        first == second && first.len() == 41,
        format!("{} files, {bytes} bytes, identical: {}", first.len(), first == second),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
        println!("{name} {} {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
