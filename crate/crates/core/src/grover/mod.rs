//! Grover search circuits and their noiseless reference values.
//!
//! A single marked item among `N = 2ⁿ` is found by alternating the oracle
//! (phase flip of the target) with the diffusion operator `2|u⟩⟨u| − I`. Each
//! round rotates the state by `2θ` with `θ = arcsin(1/√N)`, so after `k`
//! rounds the target is measured with probability `sin²((2k+1)θ)`.

pub mod mcz;

use std::f64::consts::PI;

pub use mcz::{decompose_mcz, MAX_MCZ_QUBITS};

use crate::bits::Bitstring;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::qsim::MAX_QUBITS;

/// Rotation half-angle `θ = arcsin(2^{−n/2})`.
pub fn theta(n_qubits: usize) -> f64 {
    (0.5f64).powf(n_qubits as f64 / 2.0).asin()
}

/// `⌊π / 4θ⌋`, the iteration count that maximises the success probability.
pub fn optimal_iterations(n_qubits: usize) -> Result<usize> {
    check_range(n_qubits)?;
    Ok((PI / (4.0 * theta(n_qubits))).floor() as usize)
}

/// `sin²((2k+1)θ)`.
pub fn ideal_success(n_qubits: usize, iterations: usize) -> f64 {
    ((2 * iterations + 1) as f64 * theta(n_qubits)).sin().powi(2)
}

/// Rotation angle, optimum and per-iteration ideal success for a register.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationPlan {
    pub theta: f64,
    pub optimal_iterations: usize,
    /// `ideal_success[k]` for `k = 0..=2·optimal`.
    pub ideal_success: Vec<f64>,
}

impl IterationPlan {
    pub fn new(n_qubits: usize) -> Result<Self> {
        let optimal = optimal_iterations(n_qubits)?;
        Ok(Self {
            theta: theta(n_qubits),
            optimal_iterations: optimal,
            ideal_success: (0..=2 * optimal).map(|k| ideal_success(n_qubits, k)).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroverSpec {
    target: Bitstring,
    iterations: usize,
}

impl GroverSpec {
    /// `iterations` may be zero (bare superposition) and at most twice the
    /// optimum.
    pub fn new(target: Bitstring, iterations: usize) -> Result<Self> {
        let n = target.len();
        let optimal = optimal_iterations(n)?;
        if iterations > 2 * optimal {
            return Err(Error::Input(format!(
                "{iterations} iterations exceeds twice the optimum ({optimal}) for {n} qubits"
            )));
        }
        Ok(Self { target, iterations })
    }

    pub fn n_qubits(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &Bitstring {
        &self.target
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

fn check_range(n_qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n_qubits) {
        Ok(())
    } else {
        Err(Error::Size(n_qubits))
    }
}

/// Phase oracle: `X` on every qubit that is 0 in the target, an `MCZ` over the
/// whole register, then the same `X`s again.
pub fn build_oracle(target: &Bitstring) -> Result<Circuit> {
    let n = target.len();
    let mut c = Circuit::new(n)?;
    let flips: Vec<usize> = target.zero_qubits().collect();
    c.extend(flips.iter().map(|&q| Gate::x(q)))?;
    c.push(Gate::mcz((0..n).collect()))?;
    c.extend(flips.iter().map(|&q| Gate::x(q)))?;
    Ok(c)
}

/// Diffusion `H⊗ⁿ X⊗ⁿ MCZ X⊗ⁿ H⊗ⁿ`, equal to `2|u⟩⟨u| − I` up to sign.
pub fn build_diffusion(n_qubits: usize) -> Result<Circuit> {
    check_range(n_qubits)?;
    let mut c = Circuit::new(n_qubits)?;
    c.extend((0..n_qubits).map(Gate::h))?;
    c.extend((0..n_qubits).map(Gate::x))?;
    c.push(Gate::mcz((0..n_qubits).collect()))?;
    c.extend((0..n_qubits).map(Gate::x))?;
    c.extend((0..n_qubits).map(Gate::h))?;
    Ok(c)
}

/// Macro-level Grover circuit: Hadamard layer, `k` rounds of oracle then
/// diffusion, and a measurement on every qubit.
pub fn build_grover_circuit(spec: &GroverSpec) -> Result<Circuit> {
    let n = spec.n_qubits();
    let oracle = build_oracle(spec.target())?;
    let diffusion = build_diffusion(n)?;
    let mut c = Circuit::new(n)?;
    c.extend((0..n).map(Gate::h))?;
    for _ in 0..spec.iterations() {
        c.append(&oracle)?;
        c.append(&diffusion)?;
    }
    c.extend((0..n).map(Gate::measure))?;
    Ok(c)
}
