use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use groverdd::noise::idle_channel;
use groverdd::qsim::{ops, DensityMatrix, KrausChannel, Operator, StateVector};

#[derive(Debug, Clone)]
enum Op {
    H(usize),
    Sx(usize),
    Rz(usize, f64),
    Cz(usize, usize),
    Damp(usize, f64),
    Depol(usize, usize, f64),
}

const N: usize = 4;

fn op() -> impl Strategy<Value = Op> {
    let q = 0..N;
    let pair = (0..N, 0..N - 1).prop_map(|(a, b)| (a, if b >= a { b + 1 } else { b }));
    prop_oneof![
        q.clone().prop_map(Op::H),
        q.clone().prop_map(Op::Sx),
        (q.clone(), -10.0..10.0f64).prop_map(|(q, t)| Op::Rz(q, t)),
        pair.clone().prop_map(|(a, b)| Op::Cz(a, b)),
        (q, 0.0..1.0f64).prop_map(|(q, g)| Op::Damp(q, g)),
        (pair, 0.0..1.0f64).prop_map(|((a, b), p)| Op::Depol(a, b, p)),
    ]
}

fn unitary_op() -> impl Strategy<Value = Op> {
    op().prop_filter("unitary only", |o| !matches!(o, Op::Damp(..) | Op::Depol(..)))
}

fn gate(op: &Op) -> Option<(Operator, Vec<usize>)> {
    match *op {
        Op::H(q) => Some((ops::hadamard(), vec![q])),
        Op::Sx(q) => Some((ops::sqrt_x(), vec![q])),
        Op::Rz(q, t) => Some((ops::rz(t), vec![q])),
        Op::Cz(a, b) => Some((ops::mcz(2), vec![a, b])),
        _ => None,
    }
}

fn apply(rho: &mut DensityMatrix, op: &Op) {
    match *op {
        Op::Damp(q, g) => rho.apply_channel(&KrausChannel::amplitude_damping(g).unwrap(), &[q]).unwrap(),
        Op::Depol(a, b, p) => rho.apply_channel(&KrausChannel::depolarizing(2, p).unwrap(), &[a, b]).unwrap(),
        _ => {
            let (u, t) = gate(op).unwrap();
            rho.apply_unitary(&u, &t).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn long_mixed_runs_stay_physical(ops in prop::collection::vec(op(), 200..1000)) {
        let mut rho = DensityMatrix::init_state(N).unwrap();
        for o in &ops {
            apply(&mut rho, o);
        }
        rho.check_invariants(1e-9, 1e-9).unwrap();
        let dist = rho.measure_distribution().unwrap();
        assert_abs_diff_eq!(dist.probabilities().iter().sum::<f64>(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn inverse_sequence_restores_state(prep in prop::collection::vec(op(), 0..40), ops in prop::collection::vec(unitary_op(), 1..60)) {
        let mut rho = DensityMatrix::init_state(N).unwrap();
        for o in &prep {
            apply(&mut rho, o);
        }
        let before = rho.to_matrix();
        for o in &ops {
            apply(&mut rho, o);
        }
        for o in ops.iter().rev() {
            let (u, t) = gate(o).unwrap();
            rho.apply_unitary(&u.adjoint(), &t).unwrap();
        }
        prop_assert!(ops::max_abs_diff(&rho.to_matrix(), &before) < 1e-10);
    }

    #[test]
    fn density_matches_statevector(ops in prop::collection::vec(unitary_op(), 1..120)) {
        let mut rho = DensityMatrix::init_state(N).unwrap();
        let mut psi = StateVector::zero(N).unwrap();
        for o in &ops {
            let (u, t) = gate(o).unwrap();
            rho.apply_unitary(&u, &t).unwrap();
            psi.apply_unitary(&u, &t).unwrap();
        }
        prop_assert!(ops::max_abs_diff(&rho.to_matrix(), &psi.to_density().to_matrix()) < 1e-10);
    }

    #[test]
    fn idle_channel_keeps_trace(t1 in 1e-6..1e-3f64, ratio in 0.05..2.0f64, t in 0.0..1e-3f64) {
        let ch = idle_channel(t1, ratio * t1, t).unwrap();
        let mut rho = DensityMatrix::init_state(2).unwrap();
        rho.apply_unitary(&ops::hadamard(), &[0]).unwrap();
        rho.apply_unitary(&ops::mcz(2), &[0, 1]).unwrap();
        rho.apply_channel(&ch, &[0]).unwrap();
        rho.check_invariants(1e-12, 1e-12).unwrap();
    }
}

#[test]
fn superoperator_matches_explicit_kraus_sum() {
    let ch = idle_channel(100e-6, 120e-6, 30e-6).unwrap();
    let mut rho = DensityMatrix::init_state(3).unwrap();
    for q in 0..3 {
        rho.apply_unitary(&ops::hadamard(), &[q]).unwrap();
    }
    rho.apply_unitary(&ops::rz(0.7), &[1]).unwrap();
    let full = rho.to_matrix();
    let mut expected = Operator::zeros(8, 8);
    for k in ch.operators() {
        let big = ops::embed(k, &[1], 3);
        expected += &big * &full * big.adjoint();
    }
    rho.apply_channel(&ch, &[1]).unwrap();
    assert!(ops::max_abs_diff(&rho.to_matrix(), &expected) < 1e-14);
}
