//! Experiment orchestration: build, lower, schedule, pad, simulate, sample.
//!
//! Each `(iterations, dd)` cell of an [`ExperimentConfig`] yields one
//! [`RunRecord`]. Randomness comes only from seeds derived from the master
//! seed, so a configuration always reproduces the same numbers.

mod config;
mod output;
mod stats;

use rayon::prelude::*;

pub use config::{parse_iterations, ConfigLayer, DdSpec, ExperimentConfig, IterationSpec, DEFAULT_ENSEMBLE, DEFAULT_SHOTS};
pub use output::{emit_results, histogram_csv, metrics_csv, results_csv};
pub use stats::{success_threshold, wilson_ci, z_value};

use crate::bits::Bitstring;
use crate::circuit::{busy_fraction, lower_to_native, schedule_alap, twoq_count, GateDurations, NativeKind, Time, TimedCircuit};
use crate::dd::{pad_circuit_with, DdOption};
use crate::error::{Error, Result};
use crate::grover::{build_grover_circuit, GroverSpec};
use crate::noise::{simulate_timed, NoiseModel};
use crate::qsim::{Counts, MeasurementDistribution};

/// Confidence level of every reported interval.
pub const CONFIDENCE: f64 = 0.99;

/// Detuning spread (rad/s) for the decoupling-benefit study on the 5-qubit,
/// 3-iteration circuit. [`bisect_sigma_z`] with goal 0.55, 400 draws and
/// seed 0 lands on 2.507e5; rounded down, the free-evolution success with no
/// other noise is 0.5517 (ideal 0.8969).
pub const REFERENCE_SIGMA_Z: f64 = 2.5e5;

/// Outcome of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub iterations: usize,
    pub dd: String,
    /// Exact probability in exact mode, otherwise the shot estimate.
    pub success_prob: f64,
    /// Model probability of the target after readout error.
    pub model_prob: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Outcome distribution after readout error.
    pub distribution: MeasurementDistribution,
    /// Always sampled, so the histogram sums to `shots` in both modes.
    pub counts: Counts,
    pub twoq_count: usize,
    /// Per qubit, measured on the schedule before padding.
    pub busy_fraction: Vec<f64>,
    pub inserted_sequences: Vec<u64>,
    pub total_duration: Time,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub target: Bitstring,
    pub shots: u64,
    pub exact: bool,
    pub records: Vec<RunRecord>,
}

impl ExperimentResult {
    pub fn n_qubits(&self) -> usize {
        self.target.len()
    }

    pub fn record(&self, iterations: usize, dd: &str) -> Option<&RunRecord> {
        self.records
            .iter()
            .find(|r| r.iterations == iterations && r.dd.eq_ignore_ascii_case(dd))
    }
}

/// SplitMix64 finaliser.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for draw `draw` of cell `cell`. Cells are keyed by iteration count
/// only, so every decoupling option sees the same detuning draws.
pub fn derive_seed(master: u64, cell: u64, draw: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ cell) ^ draw)
}

/// Draw index reserved for shot sampling.
const SAMPLING_DRAW: u64 = u64::MAX;

/// The scheduled native circuit for `k` iterations, before padding.
pub fn scheduled_grover(target: &Bitstring, k: usize, durations: &GateDurations) -> Result<TimedCircuit> {
    let circuit = build_grover_circuit(&GroverSpec::new(target.clone(), k)?)?;
    schedule_alap(&lower_to_native(&circuit)?, durations)
}

/// Noise-averaged outcome distribution of a scheduled circuit, before
/// readout error. With `sigma_z = 0` a single run is exact.
pub fn ensemble_distribution(tc: &TimedCircuit, model: &NoiseModel, ensemble: usize, master: u64, cell: u64) -> Result<MeasurementDistribution> {
    let n = tc.n_qubits();
    if model.sigma_z() == 0.0 {
        return simulate_timed(tc, model, &vec![0.0; n]);
    }
    let runs: Vec<Vec<f64>> = (0..ensemble as u64)
        .into_par_iter()
        .map(|draw| {
            let detuning = model.draw_detuning(derive_seed(master, cell, draw))?;
            Ok(simulate_timed(tc, model, &detuning)?.probabilities().to_vec())
        })
        .collect::<Result<_>>()?;
    let mut mean = vec![0.0; 1 << n];
    for run in &runs {
        for (m, p) in mean.iter_mut().zip(run) {
            *m += p;
        }
    }
    for m in &mut mean {
        *m /= ensemble as f64;
    }
    MeasurementDistribution::from_diagonal(n, mean)
}

fn run_cell(cfg: &ExperimentConfig, model: &NoiseModel, durations: &GateDurations, k: usize, dd: &DdOption) -> Result<RunRecord> {
    let n = cfg.n_qubits();
    let scheduled = scheduled_grover(&cfg.target, k, durations)?;
    let busy = busy_fraction(&scheduled);
    let twoq = twoq_count(&scheduled.to_circuit());
    let (timed, inserted) = match dd.sequence() {
        None => (scheduled, vec![0; n]),
        Some(seq) => {
            let pulse = durations.native(NativeKind::X)?;
            let (padded, report) = pad_circuit_with(&scheduled, seq, pulse, cfg.min_slack)?;
            (padded, report.sequences_per_qubit)
        }
    };
    let cell = k as u64;
    let raw = ensemble_distribution(&timed, model, cfg.ensemble, cfg.seed, cell)?;
    let distribution = model.apply_readout(&raw)?;
    let model_prob = distribution.probability(&cfg.target);
    let counts = distribution.sample_counts(cfg.shots, derive_seed(cfg.seed, cell, SAMPLING_DRAW))?;
    let hits = counts[cfg.target.index()];
    let (success_prob, ci_low, ci_high) = if cfg.exact {
        (model_prob, model_prob, model_prob)
    } else {
        let (lo, hi) = wilson_ci(hits, cfg.shots, CONFIDENCE);
        (hits as f64 / cfg.shots as f64, lo, hi)
    };
    Ok(RunRecord {
        iterations: k,
        dd: dd.label().to_string(),
        success_prob,
        model_prob,
        ci_low,
        ci_high,
        distribution,
        counts,
        twoq_count: twoq,
        busy_fraction: busy,
        inserted_sequences: inserted,
        total_duration: timed.total_duration(),
    })
}

fn noise_model(cfg: &ExperimentConfig) -> Result<(NoiseModel, GateDurations)> {
    let n = cfg.n_qubits();
    let (model, durations) = match &cfg.calibration {
        Some(cal) => (NoiseModel::from_calibration(cal), cal.durations().clone()),
        None => (NoiseModel::ideal(n), GateDurations::default()),
    };
    Ok((model.with_sigma_z(cfg.sigma_z)?, durations))
}

/// Runs every `(iterations, dd)` cell, iterations outermost.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let (model, durations) = noise_model(cfg)?;
    let cells: Vec<(usize, &DdOption)> = cfg
        .iterations
        .iter()
        .flat_map(|&k| cfg.dd.iter().map(move |dd| (k, dd)))
        .collect();
    let records = cells
        .par_iter()
        .map(|&(k, dd)| run_cell(cfg, &model, &durations, k, dd))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult {
        target: cfg.target.clone(),
        shots: cfg.shots,
        exact: cfg.exact,
        records,
    })
}

/// Searches `σ_z ∈ [0, hi]` for the value at which the free-evolution success
/// of `target` after `k` iterations (no other noise) reaches `goal`.
///
/// Draws are scaled standard normals from fixed seeds, so the success
/// probability is a smooth, deterministic function of `σ_z` for the search.
pub fn bisect_sigma_z(target: &Bitstring, k: usize, goal: f64, hi: f64, ensemble: usize, seed: u64, steps: usize) -> Result<f64> {
    let durations = GateDurations::default();
    let tc = scheduled_grover(target, k, &durations)?;
    let success = |sigma: f64| -> Result<f64> {
        let model = NoiseModel::ideal(target.len()).with_sigma_z(sigma)?;
        Ok(ensemble_distribution(&tc, &model, ensemble, seed, k as u64)?.probability(target))
    };
    let (mut lo, mut hi) = (0.0, hi);
    if success(hi)? > goal {
        return Err(Error::Input(format!("success stays above {goal} up to σ_z = {hi}")));
    }
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if success(mid)? > goal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
