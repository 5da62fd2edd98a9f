//! Ancilla-free multi-controlled Z.
//!
//! `C^{n-1}Z` is the phase `exp(iπ·x₀x₁…x_{n−1})`. The product of bits expands
//! into parities,
//!
//! ```text
//! x₀x₁…x_{n−1} = 2^{1−n} Σ_{S≠∅} (−1)^{|S|+1} ⊕_{i∈S} xᵢ
//! ```
//!
//! so the gate is a product of single-qubit phases on parities. The last qubit
//! accumulates every parity that contains it by walking a Gray code over the
//! remaining qubits (one CNOT per step). The parities that do not contain it
//! form the same polynomial on one qubit fewer at half the angle, which is
//! handled recursively. This costs `2ⁿ − 2` CNOTs, except that the top-level
//! two-qubit case is a single native CZ.
//!
//! Gray-code bit `b` drives control `m−1−b`, so the most frequently toggled
//! control is also the target of the next recursion level. The load therefore
//! concentrates on the last two qubits of the gate.

use std::f64::consts::PI;

use crate::circuit::{lower::NativeBuilder, Circuit, Gate};
use crate::error::{Error, Result};

/// Largest gate (controls plus target) the decomposition supports.
pub const MAX_MCZ_QUBITS: usize = 6;

/// Native fragment implementing `MCZ` on qubits `0..n_qubits`.
pub fn decompose_mcz(n_qubits: usize) -> Result<Circuit> {
    if !(2..=MAX_MCZ_QUBITS).contains(&n_qubits) {
        return Err(Error::Input(format!(
            "multi-controlled Z needs 2..={MAX_MCZ_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let qubits: Vec<usize> = (0..n_qubits).collect();
    let mut out = NativeBuilder::default();
    emit_mcz(&qubits, &mut out);
    Ok(Circuit::from_parts(n_qubits, out.finish()))
}

pub(crate) fn emit_mcz(qubits: &[usize], out: &mut NativeBuilder) {
    match qubits.len() {
        1 => out.rz(qubits[0], PI),
        2 => out.push(Gate::cz(qubits[0], qubits[1])),
        _ => emit_mcphase(qubits, PI, out),
    }
}

/// Multi-controlled phase `exp(iλ·Πxᵢ)` up to global phase.
fn emit_mcphase(qubits: &[usize], lambda: f64, out: &mut NativeBuilder) {
    let n = qubits.len();
    if n == 1 {
        out.rz(qubits[0], lambda);
        return;
    }
    let m = n - 1;
    let target = qubits[m];
    let controls = &qubits[..m];
    let scale = lambda / f64::from(1u32 << m);
    // Phase for a parity over |S| variables.
    let angle = |size: u32| if size % 2 == 1 { scale } else { -scale };

    out.rz(target, angle(1));
    for i in 1usize..(1 << m) {
        let gray = i ^ (i >> 1);
        let bit = i.trailing_zeros() as usize;
        out.cnot(controls[m - 1 - bit], target);
        out.rz(target, angle(gray.count_ones() + 1));
    }
    // The walk ends on the single top bit; undo it.
    out.cnot(controls[0], target);

    emit_mcphase(controls, lambda / 2.0, out);
}
