use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use groverdd::circuit::{simulate_ideal, GateDurations};
use groverdd::harness::{run_experiment, scheduled_grover, ExperimentConfig};
use groverdd::noise::{readout_confuse, simulate_timed_density, CalibrationSet, NoiseModel};
use groverdd::qsim::MeasurementDistribution;

fn distribution(n: usize) -> impl Strategy<Value = MeasurementDistribution> {
    prop::collection::vec(0.0..1.0f64, 1 << n).prop_map(move |w| {
        let total: f64 = w.iter().sum::<f64>().max(1e-300);
        let p = w.iter().map(|x| x / total).collect();
        MeasurementDistribution::from_diagonal(n, p).unwrap()
    })
}

proptest! {
    #[test]
    fn confusion_preserves_probability(dist in distribution(4), errors in prop::collection::vec(0.0..0.5f64, 4)) {
        let out = readout_confuse(&dist, &errors).unwrap();
        prop_assert!((out.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(out.probabilities().iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn confusion_is_doubly_stochastic(errors in prop::collection::vec(0.0..0.5f64, 3)) {
        // Columns: the image of each basis state sums to one. Rows: the image
        // of the uniform distribution is uniform.
        for i in 0..8 {
            let mut p = vec![0.0; 8];
            p[i] = 1.0;
            let out = readout_confuse(&MeasurementDistribution::from_diagonal(3, p).unwrap(), &errors).unwrap();
            prop_assert!((out.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let uniform = readout_confuse(&MeasurementDistribution::uniform(3), &errors).unwrap();
        for &p in uniform.probabilities() {
            prop_assert!((p - 0.125).abs() < 1e-12);
        }
    }
}

fn success_with_scale(k: usize, lambda: f64) -> f64 {
    let cal = CalibrationSet::bundled("pittsburgh-5q").unwrap().with_twoq_scaled(lambda).unwrap();
    let cfg = ExperimentConfig {
        calibration: Some(cal),
        ..ExperimentConfig::new("01011".parse().unwrap(), vec![k])
    };
    run_experiment(&cfg).unwrap().records[0].success_prob
}

#[test]
fn stronger_two_qubit_error_never_helps() {
    for k in 1..=4 {
        let p: Vec<f64> = [1.0, 2.0, 4.0].iter().map(|&l| success_with_scale(k, l)).collect();
        assert!(p[0] >= p[1] && p[1] >= p[2], "k={k}: {p:?}");
    }
}

#[test]
fn zero_noise_model_is_bit_exact() {
    let durations = GateDurations::default();
    for (target, k) in [("010", 2), ("01011", 3), ("0101", 1)] {
        let target = target.parse().unwrap();
        let tc = scheduled_grover(&target, k, &durations).unwrap();
        let n = tc.n_qubits();
        let timed = simulate_timed_density(&tc, &NoiseModel::ideal(n), &vec![0.0; n]).unwrap();
        let ideal = simulate_ideal(&tc.to_circuit()).unwrap();
        assert_eq!(timed.to_matrix(), ideal.to_matrix());
        let dist = timed.measure_distribution().unwrap();
        assert_eq!(NoiseModel::ideal(n).apply_readout(&dist).unwrap(), dist);
    }
    let r = &run_experiment(&ExperimentConfig::new("010".parse().unwrap(), vec![2])).unwrap().records[0];
    assert_abs_diff_eq!(r.success_prob, 0.9453125, epsilon = 1e-12);
}

#[test]
fn bundled_calibrations_all_load() {
    for label in groverdd::noise::bundled_labels() {
        let cal = CalibrationSet::bundled(label).unwrap();
        assert_eq!(cal.label(), label);
        assert!(cal.t1().iter().all(|&t| t > 1e-6 && t < 1e-2));
    }
}
