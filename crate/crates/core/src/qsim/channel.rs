use num_complex::Complex64;

use super::ops::{self, c};
use super::Operator;
use crate::error::{Error, Result};

/// Completely positive, trace-preserving map given by its Kraus operators.
///
/// The superoperator `Σ K ⊗ K̄` is precomputed at construction so that
/// applying the channel costs one small matrix-vector product per block of the
/// density matrix, independent of the number of Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    arity: usize,
    operators: Vec<Operator>,
    superop: Vec<Complex64>,
}

impl KrausChannel {
    pub const TRACE_TOLERANCE: f64 = 1e-10;

    pub fn new(operators: Vec<Operator>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::Validation("channel needs at least one Kraus operator".into()))?;
        let dim = first.nrows();
        if !dim.is_power_of_two() || !(2..=4).contains(&dim) {
            return Err(Error::Validation(format!(
                "Kraus operators must act on one or two qubits, got dimension {dim}"
            )));
        }
        if operators.iter().any(|k| k.shape() != (dim, dim)) {
            return Err(Error::Validation("Kraus operators differ in shape".into()));
        }
        let sum = operators
            .iter()
            .fold(Operator::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
        let err = ops::max_abs_diff(&sum, &ops::identity(dim));
        if err > Self::TRACE_TOLERANCE {
            return Err(Error::Validation(format!(
                "channel is not trace preserving (|ΣK†K − I| = {err:.3e})"
            )));
        }
        let arity = dim.trailing_zeros() as usize;
        let superop = superoperator(&operators);
        Ok(Self {
            arity,
            operators,
            superop,
        })
    }

    pub fn identity(arity: usize) -> Self {
        Self::new(vec![ops::identity(1 << arity)]).expect("identity is trace preserving")
    }

    /// Amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        check_probability("gamma", gamma)?;
        let k0 = Operator::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c((1.0 - gamma).sqrt(), 0.0)]);
        let k1 = Operator::from_row_slice(2, 2, &[c(0.0, 0.0), c(gamma.sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        Self::new(vec![k0, k1])
    }

    /// Phase damping; off-diagonal elements shrink by `sqrt(1 − lambda)`.
    pub fn phase_damping(lambda: f64) -> Result<Self> {
        check_probability("lambda", lambda)?;
        let k0 = Operator::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c((1.0 - lambda).sqrt(), 0.0)]);
        let k1 = Operator::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(lambda.sqrt(), 0.0)]);
        Self::new(vec![k0, k1])
    }

    /// Depolarizing channel `ρ → (1 − p)ρ + p·I/d` on one or two qubits.
    pub fn depolarizing(arity: usize, p: f64) -> Result<Self> {
        check_probability("p", p)?;
        let paulis = [ops::identity(2), ops::pauli_x(), ops::pauli_y(), ops::pauli_z()];
        let strings: Vec<Operator> = match arity {
            1 => paulis.to_vec(),
            2 => paulis
                .iter()
                .flat_map(|a| paulis.iter().map(move |b| ops::kron(a, b)))
                .collect(),
            _ => return Err(Error::Validation(format!("depolarizing arity {arity} unsupported"))),
        };
        let count = strings.len() as f64;
        let operators = strings
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let weight = if i == 0 { 1.0 - p + p / count } else { p / count };
                s * c(weight.sqrt(), 0.0)
            })
            .collect();
        Self::new(operators)
    }

    /// Channel equivalent to applying `first` and then `self`.
    pub fn after(&self, first: &KrausChannel) -> Result<Self> {
        if self.arity != first.arity {
            return Err(Error::Validation("cannot compose channels of different arity".into()));
        }
        let operators = self
            .operators
            .iter()
            .flat_map(|a| first.operators.iter().map(move |b| a * b))
            .collect();
        Self::new(operators)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    /// Row-major superoperator acting on row-major vectorised blocks.
    pub(crate) fn superop(&self) -> &[Complex64] {
        &self.superop
    }
}

fn check_probability(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} = {value} is not a probability")))
    }
}

// S[(a,b),(c,d)] = Σ_K K[a,c] conj(K[b,d])
fn superoperator(operators: &[Operator]) -> Vec<Complex64> {
    let m = operators[0].nrows();
    let m2 = m * m;
    let mut s = vec![Complex64::new(0.0, 0.0); m2 * m2];
    for k in operators {
        for a in 0..m {
            for b in 0..m {
                for cc in 0..m {
                    for d in 0..m {
                        s[(a * m + b) * m2 + cc * m + d] += k[(a, cc)] * k[(b, d)].conj();
                    }
                }
            }
        }
    }
    s
}
