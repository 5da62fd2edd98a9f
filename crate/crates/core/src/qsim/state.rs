use num_complex::Complex64;

use super::distribution::MeasurementDistribution;
use super::{ops, target_offsets, KrausChannel, Operator, MAX_QUBITS};
use crate::error::{Error, Result};

const UNITARY_TOLERANCE: f64 = 1e-10;

/// Mixed state of an `n`-qubit register, stored row-major.
///
/// Basis index `i` is the big-endian bitstring of qubits `0..n` (qubit 0 is
/// the most significant bit).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// `|0ⁿ⟩⟨0ⁿ|`.
    pub fn init_state(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1 << n_qubits;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        data[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, dim, data })
    }

    /// `|ψ⟩⟨ψ|` for a normalised state vector.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::Validation(format!("state vector length {dim} is not a power of two")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_size(n_qubits)?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("state vector has norm² {norm}")));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for a in amplitudes {
            data.extend(amplitudes.iter().map(|b| a * b.conj()));
        }
        Ok(Self { n_qubits, dim, data })
    }

    pub fn from_matrix(m: &Operator) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !dim.is_power_of_two() {
            return Err(Error::Validation(format!("{}×{} is not a register-sized matrix", m.nrows(), m.ncols())));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_size(n_qubits)?;
        let data = (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c))).map(|rc| m[rc]).collect();
        Ok(Self { n_qubits, dim, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn to_matrix(&self) -> Operator {
        Operator::from_row_slice(self.dim, self.dim, &self.data)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest element of `|ρ − ρ†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.to_matrix();
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Checks trace, Hermiticity and positivity within the given tolerances.
    pub fn check_invariants(&self, tol: f64, eig_tol: f64) -> Result<()> {
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::NumericIntegrity(format!("trace drifted to {tr}")));
        }
        let herm = self.hermiticity_error();
        if herm > tol {
            return Err(Error::NumericIntegrity(format!("hermiticity error {herm:.3e}")));
        }
        let min = self.min_eigenvalue();
        if min < -eig_tol {
            return Err(Error::NumericIntegrity(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    /// `ρ → (U ⊗ I) ρ (U ⊗ I)†` with `U` acting on `targets` (big-endian).
    pub fn apply_unitary(&mut self, u: &Operator, targets: &[usize]) -> Result<()> {
        self.check_targets(targets, u.nrows())?;
        let err = ops::unitarity_error(u);
        if err > UNITARY_TOLERANCE {
            return Err(Error::Validation(format!("operator is not unitary (|U†U − I| = {err:.3e})")));
        }
        self.apply_unitary_unchecked(u, targets);
        Ok(())
    }

    pub(crate) fn apply_unitary_unchecked(&mut self, u: &Operator, targets: &[usize]) {
        if is_diagonal(u) {
            let d: Vec<Complex64> = (0..u.nrows()).map(|i| u[(i, i)]).collect();
            self.apply_diagonal(&d, targets);
            return;
        }
        let m = u.nrows();
        let u_rows: Vec<Complex64> = (0..m).flat_map(|r| (0..m).map(move |c| (r, c))).map(|rc| u[rc]).collect();
        let (offsets, mask) = target_offsets(self.n_qubits, targets);
        let dim = self.dim;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];

        // Left multiply: columns of ρ.
        for col in 0..dim {
            for base in (0..dim).filter(|i| i & mask == 0) {
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = self.data[(base | offsets[a]) * dim + col];
                }
                for a in 0..m {
                    let row = &u_rows[a * m..(a + 1) * m];
                    let acc = row.iter().zip(&buf).map(|(x, y)| x * y).sum();
                    self.data[(base | offsets[a]) * dim + col] = acc;
                }
            }
        }
        // Right multiply by U†: rows of ρ.
        for r in 0..dim {
            let row = &mut self.data[r * dim..(r + 1) * dim];
            for base in (0..dim).filter(|i| i & mask == 0) {
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = row[base | offsets[a]];
                }
                for a in 0..m {
                    let urow = &u_rows[a * m..(a + 1) * m];
                    let acc = urow.iter().zip(&buf).map(|(x, y)| y * x.conj()).sum();
                    row[base | offsets[a]] = acc;
                }
            }
        }
    }

    /// Fast path for a diagonal operator given by its diagonal entries.
    pub(crate) fn apply_diagonal(&mut self, diag: &[Complex64], targets: &[usize]) {
        let (offsets, mask) = target_offsets(self.n_qubits, targets);
        let mut full = vec![Complex64::new(0.0, 0.0); self.dim];
        for base in (0..self.dim).filter(|i| i & mask == 0) {
            for (a, &off) in offsets.iter().enumerate() {
                full[base | off] = diag[a];
            }
        }
        let dim = self.dim;
        for (r, row) in self.data.chunks_exact_mut(dim).enumerate() {
            let dr = full[r];
            for (x, dc) in row.iter_mut().zip(&full) {
                *x *= dr * dc.conj();
            }
        }
    }

    /// `ρ → Σ Kᵢ ρ Kᵢ†` on `targets`.
    pub fn apply_channel(&mut self, channel: &KrausChannel, targets: &[usize]) -> Result<()> {
        self.check_targets(targets, 1 << channel.arity())?;
        let s = channel.superop();
        let (offsets, mask) = target_offsets(self.n_qubits, targets);
        let m = offsets.len();
        let m2 = m * m;
        let dim = self.dim;
        let bases: Vec<usize> = (0..dim).filter(|i| i & mask == 0).collect();
        let mut block = vec![Complex64::new(0.0, 0.0); m2];
        for &br in &bases {
            for &bc in &bases {
                for a in 0..m {
                    for b in 0..m {
                        block[a * m + b] = self.data[(br | offsets[a]) * dim + (bc | offsets[b])];
                    }
                }
                for a in 0..m {
                    for b in 0..m {
                        let srow = &s[(a * m + b) * m2..(a * m + b + 1) * m2];
                        let acc = srow.iter().zip(&block).map(|(x, y)| x * y).sum();
                        self.data[(br | offsets[a]) * dim + (bc | offsets[b])] = acc;
                    }
                }
            }
        }
        Ok(())
    }

    /// Probability distribution of a computational-basis measurement of every
    /// qubit.
    pub fn measure_distribution(&self) -> Result<MeasurementDistribution> {
        let diag: Vec<f64> = (0..self.dim).map(|i| self.get(i, i).re).collect();
        MeasurementDistribution::from_diagonal(self.n_qubits, diag)
    }

    fn check_targets(&self, targets: &[usize], op_dim: usize) -> Result<()> {
        if targets.is_empty() || op_dim != 1 << targets.len() {
            return Err(Error::Operand(format!(
                "operator of dimension {op_dim} does not match {} target(s)",
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n_qubits {
                return Err(Error::Operand(format!("qubit {t} out of range for {} qubits", self.n_qubits)));
            }
            if targets[..i].contains(&t) {
                return Err(Error::Operand(format!("duplicate target qubit {t}")));
            }
        }
        Ok(())
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n_qubits) {
        Ok(())
    } else {
        Err(Error::Size(n_qubits))
    }
}

fn is_diagonal(u: &Operator) -> bool {
    let n = u.nrows();
    (0..n).all(|r| (0..n).all(|c| r == c || u[(r, c)] == Complex64::new(0.0, 0.0)))
}
