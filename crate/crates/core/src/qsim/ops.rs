//! Small dense operators and comparisons used across the crate.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::Operator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Operator {
    Operator::identity(dim, dim)
}

pub fn pauli_x() -> Operator {
    Operator::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> Operator {
    Operator::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> Operator {
    Operator::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> Operator {
    let h = c(FRAC_1_SQRT_2, 0.0);
    Operator::from_row_slice(2, 2, &[h, h, h, -h])
}

/// √X with the usual `½[[1+i, 1−i], [1−i, 1+i]]` phase.
pub fn sqrt_x() -> Operator {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    Operator::from_row_slice(2, 2, &[p, m, m, p])
}

/// `RZ(θ) = exp(−iθZ/2)`.
pub fn rz(theta: f64) -> Operator {
    Operator::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::from_polar(1.0, -theta / 2.0),
        Complex64::from_polar(1.0, theta / 2.0),
    ]))
}

/// π rotation about the in-plane axis at angle `phi` from +X towards +Y:
/// `−i(cos φ X + sin φ Y)`.
pub fn pi_pulse(phi: f64) -> Operator {
    let (s, co) = phi.sin_cos();
    (pauli_x() * c(co, 0.0) + pauli_y() * c(s, 0.0)) * (-I)
}

/// Diagonal `diag(1, …, 1, −1)` on `n` qubits.
pub fn mcz(n: usize) -> Operator {
    let dim = 1 << n;
    let mut m = identity(dim);
    m[(dim - 1, dim - 1)] = -ONE;
    m
}

pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

/// Embed a `k`-qubit operator acting on `targets` into an `n`-qubit register.
pub fn embed(op: &Operator, targets: &[usize], n_qubits: usize) -> Operator {
    let dim = 1usize << n_qubits;
    let (offsets, mask) = super::target_offsets(n_qubits, targets);
    let m = offsets.len();
    let mut full = Operator::zeros(dim, dim);
    for base in (0..dim).filter(|i| i & mask == 0) {
        for a in 0..m {
            for b in 0..m {
                full[(base | offsets[a], base | offsets[b])] = op[(a, b)];
            }
        }
    }
    full
}

/// Largest elementwise deviation of `U†U` from the identity.
pub fn unitarity_error(u: &Operator) -> f64 {
    let prod = u.adjoint() * u;
    max_abs_diff(&prod, &identity(u.nrows()))
}

pub fn max_abs_diff(a: &Operator, b: &Operator) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Distance between `a` and `b` after removing the best global phase,
/// measured as the largest elementwise deviation.
pub fn phase_distance(a: &Operator, b: &Operator) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    // Align on the largest entry of `b`.
    let (idx, _) = b
        .iter()
        .enumerate()
        .fold((0, 0.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
    let (ai, bi) = (a.as_slice()[idx], b.as_slice()[idx]);
    if ai.norm() < 1e-12 {
        return f64::INFINITY;
    }
    let phase = bi / ai;
    let phase = phase / phase.norm();
    max_abs_diff(&(a * phase), b)
}

pub fn equal_up_to_phase(a: &Operator, b: &Operator, tol: f64) -> bool {
    phase_distance(a, b) <= tol
}
