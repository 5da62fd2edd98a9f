use super::Circuit;
use crate::error::Result;
use crate::qsim::{ops, DensityMatrix, Operator};

/// Noiseless evolution of `|0ⁿ⟩` through every gate with a unitary
/// (measurements, delays and barriers are no-ops).
pub fn simulate_ideal(circuit: &Circuit) -> Result<DensityMatrix> {
    let mut rho = DensityMatrix::init_state(circuit.n_qubits())?;
    for gate in circuit.gates() {
        if let Some(u) = gate.unitary() {
            rho.apply_unitary_unchecked(&u, &gate.qubits);
        }
    }
    Ok(rho)
}

/// Full-register unitary of a circuit. Exponential in size; meant for checks
/// on small registers.
pub fn circuit_unitary(circuit: &Circuit) -> Operator {
    let n = circuit.n_qubits();
    circuit
        .gates()
        .iter()
        .filter_map(|g| g.unitary().map(|u| ops::embed(&u, &g.qubits, n)))
        .fold(ops::identity(1 << n), |acc, u| u * acc)
}
