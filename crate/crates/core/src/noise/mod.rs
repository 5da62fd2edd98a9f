//! Calibration-driven noise.
//!
//! Idle and gate time relax each qubit through amplitude damping and pure
//! dephasing set by its `T1`/`T2`; every `CZ` is followed by a two-qubit
//! depolarizing channel; readout flips each bit symmetrically. An optional
//! quasi-static detuning rotates idle qubits about `Z` at a rate drawn once
//! per run, which is the part of the noise that decoupling pulses undo.

mod calibration;
mod sim;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub use calibration::{bundled_labels, CalibrationSet};
pub use sim::{simulate_timed, simulate_timed_density};

use crate::error::{Error, Result};
use crate::qsim::{KrausChannel, MeasurementDistribution};

/// Amplitude damping `γ = 1 − e^{−t/T1}` followed by pure dephasing at rate
/// `1/T_φ = 1/T2 − 1/(2·T1)`. Coherences decay as `e^{−t/T2}` overall.
/// Infinite `T1`/`T2` switch the corresponding process off.
pub fn idle_channel(t1: f64, t2: f64, t: f64) -> Result<KrausChannel> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Input(format!("idle time {t} s must be finite and ≥ 0")));
    }
    if !(t1 > 0.0 && t2 > 0.0) {
        return Err(Error::Input(format!("T1 = {t1} s and T2 = {t2} s must be positive")));
    }
    if t2 > 2.0 * t1 * (1.0 + 1e-12) {
        return Err(Error::Input(format!("T2 = {t2} s exceeds 2·T1 = {} s", 2.0 * t1)));
    }
    let gamma = -(-t / t1).exp_m1();
    let rate_phi = (1.0 / t2 - 0.5 / t1).max(0.0);
    let lambda = -(-2.0 * t * rate_phi).exp_m1();
    KrausChannel::phase_damping(lambda)?.after(&KrausChannel::amplitude_damping(gamma)?)
}

/// Two-qubit depolarizing channel whose average gate infidelity is `e`:
/// `p = e·D/(D−1)` with `D = 16`.
pub fn two_qubit_error_channel(e: f64) -> Result<KrausChannel> {
    if !(0.0..=15.0 / 16.0).contains(&e) {
        return Err(Error::Input(format!("two-qubit error {e} outside [0, 15/16]")));
    }
    KrausChannel::depolarizing(2, depolarizing_parameter(e))
}

/// `p = 16e/15`.
pub fn depolarizing_parameter(e: f64) -> f64 {
    e * 16.0 / 15.0
}

/// Flips each bit of the outcome independently with its qubit's error rate.
pub fn readout_confuse(dist: &MeasurementDistribution, errors: &[f64]) -> Result<MeasurementDistribution> {
    let n = dist.n_qubits();
    if errors.len() != n {
        return Err(Error::Input(format!("{} readout errors for {n} qubits", errors.len())));
    }
    if let Some(e) = errors.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(Error::Input(format!("readout error {e} is not a probability")));
    }
    let mut p = dist.probabilities().to_vec();
    for (q, &e) in errors.iter().enumerate() {
        if e == 0.0 {
            continue;
        }
        let bit = 1 << (n - 1 - q);
        for i in (0..p.len()).filter(|i| i & bit == 0) {
            let (a, b) = (p[i], p[i | bit]);
            p[i] = (1.0 - e) * a + e * b;
            p[i | bit] = e * a + (1.0 - e) * b;
        }
    }
    MeasurementDistribution::from_diagonal(n, p)
}

/// One Gaussian detuning per qubit, `δ ~ N(0, σ_z)` in rad/s.
pub fn sample_detuning(sigma_z: f64, n_qubits: usize, seed: u64) -> Result<Vec<f64>> {
    if !(sigma_z >= 0.0 && sigma_z.is_finite()) {
        return Err(Error::Input(format!("σ_z = {sigma_z} must be finite and ≥ 0")));
    }
    if sigma_z == 0.0 {
        return Ok(vec![0.0; n_qubits]);
    }
    let normal = Normal::new(0.0, sigma_z).map_err(|e| Error::Input(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n_qubits).map(|_| normal.sample(&mut rng)).collect())
}

/// Everything the timed simulator needs to know about the device, per logical
/// qubit. Times in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    n_qubits: usize,
    t1: Vec<f64>,
    t2: Vec<f64>,
    readout_error: Vec<f64>,
    twoq_error: Vec<Vec<f64>>,
    sigma_z: f64,
}

impl NoiseModel {
    /// No relaxation, no gate or readout error, no detuning.
    pub fn ideal(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            t1: vec![f64::INFINITY; n_qubits],
            t2: vec![f64::INFINITY; n_qubits],
            readout_error: vec![0.0; n_qubits],
            twoq_error: vec![vec![0.0; n_qubits]; n_qubits],
            sigma_z: 0.0,
        }
    }

    pub fn from_calibration(cal: &CalibrationSet) -> Self {
        let n = cal.n_qubits();
        Self {
            n_qubits: n,
            t1: cal.t1().to_vec(),
            t2: cal.t2().to_vec(),
            readout_error: cal.readout_error().to_vec(),
            twoq_error: (0..n).map(|a| (0..n).map(|b| cal.twoq_error(a, b)).collect()).collect(),
            sigma_z: 0.0,
        }
    }

    pub fn with_sigma_z(mut self, sigma_z: f64) -> Result<Self> {
        if !(sigma_z >= 0.0 && sigma_z.is_finite()) {
            return Err(Error::Input(format!("σ_z = {sigma_z} must be finite and ≥ 0")));
        }
        self.sigma_z = sigma_z;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn sigma_z(&self) -> f64 {
        self.sigma_z
    }

    pub fn readout_error(&self) -> &[f64] {
        &self.readout_error
    }

    pub fn twoq_error(&self, a: usize, b: usize) -> f64 {
        self.twoq_error[a][b]
    }

    /// True when no dissipative channel is active, so a pure state stays pure.
    pub fn is_coherent(&self) -> bool {
        self.t1.iter().chain(&self.t2).all(|t| t.is_infinite())
            && self.twoq_error.iter().flatten().all(|&e| e == 0.0)
    }

    /// Relaxation over `t` seconds on `qubit`, or `None` when nothing happens.
    pub fn idle(&self, qubit: usize, t: f64) -> Result<Option<KrausChannel>> {
        if t == 0.0 || (self.t1[qubit].is_infinite() && self.t2[qubit].is_infinite()) {
            return Ok(None);
        }
        idle_channel(self.t1[qubit], self.t2[qubit], t).map(Some)
    }

    pub fn draw_detuning(&self, seed: u64) -> Result<Vec<f64>> {
        sample_detuning(self.sigma_z, self.n_qubits, seed)
    }

    pub fn apply_readout(&self, dist: &MeasurementDistribution) -> Result<MeasurementDistribution> {
        if self.readout_error.iter().all(|&e| e == 0.0) {
            return Ok(dist.clone());
        }
        readout_confuse(dist, &self.readout_error)
    }
}
