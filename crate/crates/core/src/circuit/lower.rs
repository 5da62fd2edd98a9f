use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::grover::mcz;

/// Accumulates native gates, merging back-to-back `RZ`s on the same qubit.
#[derive(Debug, Default)]
pub(crate) struct NativeBuilder {
    gates: Vec<Gate>,
}

impl NativeBuilder {
    pub(crate) fn push(&mut self, gate: Gate) {
        if let GateKind::Rz(theta) = gate.kind {
            self.rz(gate.qubits[0], theta);
        } else {
            self.gates.push(gate);
        }
    }

    pub(crate) fn rz(&mut self, q: usize, theta: f64) {
        if let Some(last) = self.gates.last_mut() {
            if let GateKind::Rz(prev) = last.kind {
                if last.qubits[0] == q {
                    let merged = (prev + theta).rem_euclid(2.0 * TAU);
                    if merged.abs() < 1e-15 {
                        self.gates.pop();
                    } else {
                        last.kind = GateKind::Rz(merged);
                    }
                    return;
                }
            }
        }
        self.gates.push(Gate::rz(q, theta));
    }

    pub(crate) fn h(&mut self, q: usize) {
        self.rz(q, FRAC_PI_2);
        self.push(Gate::sx(q));
        self.rz(q, FRAC_PI_2);
    }

    /// CNOT as `H_t · CZ · H_t`.
    pub(crate) fn cnot(&mut self, control: usize, target: usize) {
        self.h(target);
        self.push(Gate::cz(control, target));
        self.h(target);
    }

    pub(crate) fn finish(self) -> Vec<Gate> {
        self.gates
    }
}

/// Rewrites `H` and `MCZ` macros into `{X, SX, RZ, CZ}`; other gates pass
/// through unchanged. The result equals the input up to global phase.
pub fn lower_to_native(circuit: &Circuit) -> Result<Circuit> {
    let mut out = NativeBuilder::default();
    for gate in circuit.gates() {
        match gate.kind {
            GateKind::H => out.h(gate.qubits[0]),
            GateKind::MCZ => match gate.qubits.len() {
                1 => out.rz(gate.qubits[0], PI),
                2..=mcz::MAX_MCZ_QUBITS => mcz::emit_mcz(&gate.qubits, &mut out),
                n => {
                    return Err(Error::Lowering(format!(
                        "mcz on {n} qubits (at most {} supported)",
                        mcz::MAX_MCZ_QUBITS
                    )))
                }
            },
            _ => out.push(gate.clone()),
        }
    }
    Ok(Circuit::from_parts(circuit.n_qubits(), out.finish()))
}

/// Number of two-qubit (`CZ`) gates.
pub fn twoq_count(circuit: &Circuit) -> usize {
    circuit
        .gates()
        .iter()
        .filter(|g| matches!(g.kind, GateKind::CZ))
        .count()
}
