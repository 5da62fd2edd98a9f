use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::bits::Bitstring;
use crate::error::{Error, Result};

/// Largest drift of `Σ diag(ρ)` from 1 that is silently renormalised.
pub const DRIFT_TOLERANCE: f64 = 1e-9;

/// Outcome probabilities of a full-register measurement, indexed by
/// big-endian bitstring.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDistribution {
    n_qubits: usize,
    probabilities: Vec<f64>,
}

/// Shot counts indexed like [`MeasurementDistribution`].
pub type Counts = Vec<u64>;

impl MeasurementDistribution {
    /// Builds a distribution from the real diagonal of a density matrix.
    /// Negative entries are clamped to zero and the vector renormalised; a sum
    /// further than [`DRIFT_TOLERANCE`] from one is an integrity error.
    pub fn from_diagonal(n_qubits: usize, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != 1 << n_qubits {
            return Err(Error::Validation(format!(
                "{} probabilities for {n_qubits} qubits",
                diag.len()
            )));
        }
        let sum: f64 = diag.iter().sum();
        if !sum.is_finite() || (sum - 1.0).abs() > DRIFT_TOLERANCE {
            return Err(Error::NumericIntegrity(format!(
                "measurement probabilities sum to {sum}"
            )));
        }
        let clamped: Vec<f64> = diag.into_iter().map(|p| p.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let probabilities = clamped.into_iter().map(|p| p / total).collect();
        Ok(Self {
            n_qubits,
            probabilities,
        })
    }

    pub fn uniform(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        Self {
            n_qubits,
            probabilities: vec![1.0 / dim as f64; dim],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, bits: &Bitstring) -> f64 {
        self.probabilities[bits.index()]
    }

    /// Half the L1 distance between two distributions.
    pub fn total_variation(&self, other: &Self) -> f64 {
        0.5 * self
            .probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    /// Index of the most likely outcome, ties resolved towards the lower index.
    pub fn argmax(&self) -> usize {
        self.probabilities
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &p)| if p > best.1 { (i, p) } else { best })
            .0
    }

    /// Multinomial sample of `shots` outcomes, reproducible for a given seed.
    pub fn sample_counts(&self, shots: u64, seed: u64) -> Result<Counts> {
        if shots == 0 {
            return Err(Error::Input("shots must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; self.probabilities.len()];
        let mut remaining = shots;
        let mut mass = 1.0f64;
        for (slot, &p) in counts.iter_mut().zip(&self.probabilities) {
            if remaining == 0 {
                break;
            }
            if mass <= 0.0 {
                break;
            }
            let q = (p / mass).clamp(0.0, 1.0);
            let draw = Binomial::new(remaining, q)
                .map_err(|e| Error::NumericIntegrity(format!("binomial sampler: {e}")))?
                .sample(&mut rng);
            *slot = draw;
            remaining -= draw;
            mass -= p;
        }
        // Rounding in the running mass can strand a handful of shots.
        if remaining > 0 {
            let last = self.argmax();
            counts[last] += remaining;
        }
        Ok(counts)
    }
}
