use num_complex::Complex64;

use super::{ops, target_offsets, DensityMatrix, MeasurementDistribution, Operator, MAX_QUBITS};
use crate::error::{Error, Result};

/// Pure-state register. Used for noise-free trajectories and as a reference
/// for the density-matrix engine.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::Size(n_qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn apply_unitary(&mut self, u: &Operator, targets: &[usize]) -> Result<()> {
        if targets.is_empty()
            || u.nrows() != 1 << targets.len()
            || targets.iter().any(|&t| t >= self.n_qubits)
            || (1..targets.len()).any(|i| targets[..i].contains(&targets[i]))
        {
            return Err(Error::Operand(format!("bad targets {targets:?} for a {}-row operator", u.nrows())));
        }
        if ops::unitarity_error(u) > 1e-10 {
            return Err(Error::Validation("operator is not unitary".into()));
        }
        self.apply_unchecked(u, targets);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, u: &Operator, targets: &[usize]) {
        let m = u.nrows();
        let (offsets, mask) = target_offsets(self.n_qubits, targets);
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for base in (0..self.amps.len()).filter(|i| i & mask == 0) {
            for (a, slot) in buf.iter_mut().enumerate() {
                *slot = self.amps[base | offsets[a]];
            }
            for a in 0..m {
                self.amps[base | offsets[a]] = (0..m).map(|b| u[(a, b)] * buf[b]).sum();
            }
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn measure_distribution(&self) -> Result<MeasurementDistribution> {
        MeasurementDistribution::from_diagonal(self.n_qubits, self.probabilities())
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amps).expect("normalised state")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_state() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_unitary(&ops::hadamard(), &[0]).unwrap();
        s.apply_unitary(&ops::hadamard(), &[1]).unwrap();
        s.apply_unitary(&ops::mcz(2), &[0, 1]).unwrap();
        s.apply_unitary(&ops::hadamard(), &[1]).unwrap();
        let p = s.probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
        assert!(s.apply_unitary(&ops::hadamard(), &[2]).is_err());
        assert!(StateVector::zero(8).is_err());
    }
}
