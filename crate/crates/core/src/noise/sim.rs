use std::collections::HashMap;

use num_complex::Complex64;

use super::{two_qubit_error_channel, NoiseModel};
use crate::circuit::{GateKind, Time, TimedCircuit};
use crate::error::{Error, Result};
use crate::qsim::{DensityMatrix, KrausChannel, MeasurementDistribution, Operator, StateVector};

trait Register {
    fn unitary(&mut self, u: &Operator, targets: &[usize]);
    fn phase(&mut self, qubit: usize, theta: f64);
    fn channel(&mut self, ch: &KrausChannel, targets: &[usize]) -> Result<()>;
}

impl Register for DensityMatrix {
    fn unitary(&mut self, u: &Operator, targets: &[usize]) {
        self.apply_unitary_unchecked(u, targets);
    }

    fn phase(&mut self, qubit: usize, theta: f64) {
        self.apply_diagonal(&rz_diag(theta), &[qubit]);
    }

    fn channel(&mut self, ch: &KrausChannel, targets: &[usize]) -> Result<()> {
        self.apply_channel(ch, targets)
    }
}

impl Register for StateVector {
    fn unitary(&mut self, u: &Operator, targets: &[usize]) {
        self.apply_unchecked(u, targets);
    }

    fn phase(&mut self, qubit: usize, theta: f64) {
        let d = rz_diag(theta);
        let u = Operator::from_diagonal(&nalgebra::DVector::from_row_slice(&d));
        self.apply_unchecked(&u, &[qubit]);
    }

    fn channel(&mut self, _: &KrausChannel, _: &[usize]) -> Result<()> {
        Err(Error::Validation("a pure-state run cannot apply a noise channel".into()))
    }
}

fn rz_diag(theta: f64) -> [Complex64; 2] {
    [Complex64::from_polar(1.0, -theta / 2.0), Complex64::from_polar(1.0, theta / 2.0)]
}

/// Measurement distribution of a scheduled circuit under `model` with one
/// fixed set of per-qubit detunings (rad/s), before readout error.
///
/// Gates run in schedule order. Before each gate its qubits catch up to the
/// gate's start: the idle gap rotates them by `δ·gap` about `Z` and relaxes
/// them. A gate then applies its unitary, a `CZ` its depolarizing error, and
/// any gate with a duration relaxes its qubits for that long. Measurements
/// end a qubit's evolution.
pub fn simulate_timed(tc: &TimedCircuit, model: &NoiseModel, detuning: &[f64]) -> Result<MeasurementDistribution> {
    if model.is_coherent() {
        let mut psi = StateVector::zero(tc.n_qubits())?;
        run(&mut psi, tc, model, detuning)?;
        psi.measure_distribution()
    } else {
        simulate_timed_density(tc, model, detuning)?.measure_distribution()
    }
}

/// Like [`simulate_timed`] but always on a density matrix, returning the final
/// state.
pub fn simulate_timed_density(tc: &TimedCircuit, model: &NoiseModel, detuning: &[f64]) -> Result<DensityMatrix> {
    let mut rho = DensityMatrix::init_state(tc.n_qubits())?;
    run(&mut rho, tc, model, detuning)?;
    Ok(rho)
}

fn run<R: Register>(reg: &mut R, tc: &TimedCircuit, model: &NoiseModel, detuning: &[f64]) -> Result<()> {
    let n = tc.n_qubits();
    if model.n_qubits() != n || detuning.len() != n {
        return Err(Error::Config(format!(
            "noise model for {} qubits and {} detunings applied to a {n}-qubit circuit",
            model.n_qubits(),
            detuning.len()
        )));
    }
    let mut clock = vec![Time::ZERO; n];
    let mut measured = vec![false; n];
    let mut idle_cache: HashMap<(usize, Time), Option<KrausChannel>> = HashMap::new();
    let mut cz_cache: HashMap<(usize, usize), Option<KrausChannel>> = HashMap::new();

    let mut relax = |reg: &mut R, q: usize, t: Time| -> Result<()> {
        if t == Time::ZERO {
            return Ok(());
        }
        let ch = match idle_cache.get(&(q, t)) {
            Some(ch) => ch,
            None => {
                let ch = model.idle(q, t.as_secs_f64())?;
                idle_cache.entry((q, t)).or_insert(ch)
            }
        };
        if let Some(ch) = ch {
            reg.channel(ch, &[q])?;
        }
        Ok(())
    };

    for g in tc.gates() {
        let qubits = &g.gate.qubits;
        if matches!(g.gate.kind, GateKind::Barrier | GateKind::Delay(_)) {
            continue;
        }
        if let Some(&q) = qubits.iter().find(|&&q| measured[q]) {
            return Err(Error::Validation(format!("{} on qubit {q} after its measurement", g.gate.kind.name())));
        }
        for &q in qubits {
            let gap = g.start.saturating_sub(clock[q]);
            if gap > Time::ZERO {
                if detuning[q] != 0.0 {
                    reg.phase(q, detuning[q] * gap.as_secs_f64());
                }
                relax(reg, q, gap)?;
            }
        }
        match &g.gate.kind {
            GateKind::Measure => {
                measured[qubits[0]] = true;
            }
            kind => {
                let u = g
                    .gate
                    .unitary()
                    .ok_or_else(|| Error::Validation(format!("{} has no unitary", kind.name())))?;
                reg.unitary(&u, qubits);
                if *kind == GateKind::CZ {
                    let (a, b) = (qubits[0].min(qubits[1]), qubits[0].max(qubits[1]));
                    let ch = match cz_cache.get(&(a, b)) {
                        Some(ch) => ch,
                        None => {
                            let e = model.twoq_error(a, b);
                            let ch = if e > 0.0 { Some(two_qubit_error_channel(e)?) } else { None };
                            cz_cache.entry((a, b)).or_insert(ch)
                        }
                    };
                    if let Some(ch) = ch {
                        reg.channel(ch, qubits)?;
                    }
                }
                for &q in qubits {
                    relax(reg, q, g.duration)?;
                }
            }
        }
        for &q in qubits {
            clock[q] = clock[q].max(g.end());
        }
    }
    // Unmeasured qubits idle until the end of the schedule.
    for q in (0..n).filter(|&q| !measured[q]) {
        let gap = tc.total_duration().saturating_sub(clock[q]);
        if gap > Time::ZERO {
            if detuning[q] != 0.0 {
                reg.phase(q, detuning[q] * gap.as_secs_f64());
            }
            relax(reg, q, gap)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{schedule_alap, Circuit, Gate, GateDurations, TimedGate};
    use crate::dd::{catalog, pad_circuit};
    use crate::noise::CalibrationSet;
    use crate::qsim::ops;

    fn ramsey(idle: Time) -> TimedCircuit {
        let d = Time::from_ns(32);
        let gates = vec![
            TimedGate { gate: Gate::rz(0, std::f64::consts::FRAC_PI_2), start: Time::ZERO, duration: Time::ZERO },
            TimedGate { gate: Gate::sx(0), start: Time::ZERO, duration: d },
            TimedGate { gate: Gate::rz(0, std::f64::consts::FRAC_PI_2), start: d, duration: Time::ZERO },
            TimedGate { gate: Gate::delay(0, idle), start: d, duration: idle },
            TimedGate { gate: Gate::rz(0, 0.0), start: d + idle, duration: Time::ZERO },
        ];
        TimedCircuit::new(1, gates).unwrap()
    }

    /// Coherence `|⟨0|ρ|1⟩|` of the final state and its phase.
    fn coherence(tc: &TimedCircuit, delta: f64) -> Complex64 {
        simulate_timed_density(tc, &NoiseModel::ideal(1), &[delta]).unwrap().get(0, 1)
    }

    #[test]
    fn free_ramsey_precesses_and_decoupling_refocuses() {
        let idle = Time::from_ns(4000);
        let delta = 2.0e5;
        let tc = ramsey(idle);
        let free = coherence(&tc, delta);
        let reference = coherence(&tc, 0.0);
        assert!((free.norm() - 0.5).abs() < 1e-12);
        // Relative phase follows δ·t: the projection on the undetuned state is cos(δt).
        let overlap = (free * reference.conj()).re / 0.25;
        assert!((overlap - (delta * idle.as_secs_f64()).cos()).abs() < 1e-9);
        for seq in catalog() {
            let (padded, report) = pad_circuit(&tc, &seq, Time::from_ns(32)).unwrap();
            assert!(report.total_pulses > 0);
            let echoed = coherence(&padded, delta);
            let undetuned = coherence(&padded, 0.0);
            let fidelity = (echoed * undetuned.conj()).re / 0.25;
            assert!(fidelity >= 0.999, "{}: {fidelity}", seq.name());
        }
    }

    #[test]
    fn pure_and_mixed_paths_agree() {
        let mut c = Circuit::new(2).unwrap();
        c.extend([Gate::sx(0), Gate::x(1), Gate::cz(0, 1), Gate::sx(1), Gate::measure(0), Gate::measure(1)]).unwrap();
        let tc = schedule_alap(&c, &GateDurations::default()).unwrap();
        let m = NoiseModel::ideal(2);
        let det = [3e5, -1e5];
        let a = simulate_timed(&tc, &m, &det).unwrap();
        let b = simulate_timed_density(&tc, &m, &det).unwrap().measure_distribution().unwrap();
        assert!(a.total_variation(&b) < 1e-12);
    }

    #[test]
    fn relaxation_lowers_excited_population() {
        let mut c = Circuit::new(3).unwrap();
        c.extend([Gate::x(0), Gate::x(1), Gate::x(2), Gate::cz(0, 1), Gate::cz(1, 2), Gate::cz(0, 1)]).unwrap();
        c.extend((0..3).map(Gate::measure)).unwrap();
        let cal = CalibrationSet::bundled("torino-3q").unwrap();
        let tc = schedule_alap(&c, cal.durations()).unwrap();
        let noisy = simulate_timed_density(&tc, &NoiseModel::from_calibration(&cal), &[0.0; 3]).unwrap();
        noisy.check_invariants(1e-12, 1e-12).unwrap();
        let p111 = noisy.get(7, 7).re;
        assert!(p111 < 1.0 - 1e-4 && p111 > 0.9, "{p111}");
        let clean = simulate_timed(&tc, &NoiseModel::ideal(3), &[0.0; 3]).unwrap();
        assert_eq!(clean.probabilities()[7], 1.0);
        assert!(ops::c(p111, 0.0).re < clean.probabilities()[7]);
    }

    #[test]
    fn rejects_mismatched_sizes() {
        let tc = ramsey(Time::from_ns(100));
        assert!(simulate_timed(&tc, &NoiseModel::ideal(2), &[0.0, 0.0]).is_err());
        assert!(simulate_timed(&tc, &NoiseModel::ideal(1), &[]).is_err());
    }
}
