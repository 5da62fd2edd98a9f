//! Density-matrix evolution engine.
//!
//! Registers of up to [`MAX_QUBITS`] qubits are held as dense `2ⁿ × 2ⁿ`
//! complex matrices. Gates are applied as `U ρ U†` on their target qubits and
//! noise as Kraus channels `Σ K ρ K†`, both without ever materialising the
//! full-register operator.

mod channel;
mod distribution;
pub mod ops;
mod state;
mod statevector;

pub use channel::KrausChannel;
pub use distribution::{Counts, MeasurementDistribution};
pub use state::DensityMatrix;
pub use statevector::StateVector;

/// Largest register the engine accepts.
pub const MAX_QUBITS: usize = 7;

/// Dense complex operator on a handful of qubits.
pub type Operator = nalgebra::DMatrix<num_complex::Complex64>;

/// Bit mask offsets of the `2^k` sub-indices spanned by `targets` inside a
/// register of `n_qubits`, in big-endian operator order.
pub(crate) fn target_offsets(n_qubits: usize, targets: &[usize]) -> (Vec<usize>, usize) {
    let k = targets.len();
    let mut mask = 0usize;
    for &t in targets {
        mask |= 1 << (n_qubits - 1 - t);
    }
    let offsets = (0..1usize << k)
        .map(|a| {
            targets.iter().enumerate().fold(0usize, |acc, (j, &t)| {
                acc | (((a >> (k - 1 - j)) & 1) << (n_qubits - 1 - t))
            })
        })
        .collect();
    (offsets, mask)
}
