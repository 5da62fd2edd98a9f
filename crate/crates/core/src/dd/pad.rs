use super::{DDSequence, PiFraction};
use crate::circuit::{extract_idle_windows, Gate, GateKind, IdleWindow, Time, TimedCircuit, TimedGate};
use crate::error::{Error, Result};

/// The three native gates realising one phased π pulse, in circuit order:
/// `RZ(−φ)`, `X`, `RZ(φ)`. Their product `RZ(φ)·X·RZ(−φ)` is the π rotation
/// about the in-plane axis at angle `φ`; only the `X` takes time.
pub fn pulse_to_gates(qubit: usize, phase: PiFraction) -> [Gate; 3] {
    let phi = phase.reduced().radians();
    [Gate::rz(qubit, -phi), Gate::x(qubit), Gate::rz(qubit, phi)]
}

/// Start offsets of `n_pulses` pulses of length `pulse` inside a repetition of
/// length `length`, spaced `τ/2, τ, …, τ, τ/2` with
/// `τ = length/n_pulses − pulse`. Offsets are floored to whole picoseconds.
pub fn pulse_starts(length: Time, n_pulses: usize, pulse: Time) -> Vec<Time> {
    let (l, n, d) = (length.as_ps() as u128, n_pulses as u128, pulse.as_ps() as u128);
    assert!(l >= n * d, "repetition shorter than its pulses");
    (0..n)
        .map(|i| Time::from_ps((((2 * i + 1) * l - n * d) / (2 * n)) as u64))
        .collect()
}

/// Number of whole repetitions that fit a window.
pub fn repetitions(window: Time, n_pulses: usize, pulse: Time, min_slack: f64) -> u64 {
    let need = n_pulses as u64 * pulse.as_ps();
    if need == 0 {
        return 0;
    }
    let r = if min_slack == 0.0 {
        window.as_ps() / need
    } else {
        (window.as_ps() as f64 / (need as f64 * (1.0 + min_slack))).floor() as u64
    };
    r.min(window.as_ps() / need)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowPadding {
    pub window: IdleWindow,
    pub repetitions: u64,
}

/// What [`pad_circuit`] inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddingReport {
    /// Whole sequences inserted on each qubit.
    pub sequences_per_qubit: Vec<u64>,
    pub windows: Vec<WindowPadding>,
    pub total_pulses: u64,
}

/// Pads every idle window with as many whole repetitions of `seq` as fit,
/// using the default zero minimum slack.
pub fn pad_circuit(tc: &TimedCircuit, seq: &DDSequence, pulse_duration: Time) -> Result<(TimedCircuit, PaddingReport)> {
    pad_circuit_with(tc, seq, pulse_duration, 0.0)
}

/// Like [`pad_circuit`], but a window of length `L` only takes
/// `⌊L / (n_p·d·(1 + min_slack))⌋` repetitions. Each repetition gets an equal
/// share of the window and spaces its pulses symmetrically. Windows too short
/// for one repetition keep any `DELAY` they hold; `DELAY`s inside padded
/// windows are replaced by the pulses.
pub fn pad_circuit_with(
    tc: &TimedCircuit,
    seq: &DDSequence,
    pulse_duration: Time,
    min_slack: f64,
) -> Result<(TimedCircuit, PaddingReport)> {
    if pulse_duration == Time::ZERO {
        return Err(Error::Input("pulse duration must be positive".into()));
    }
    if !(min_slack >= 0.0 && min_slack.is_finite()) {
        return Err(Error::Input(format!("minimum slack {min_slack} must be ≥ 0")));
    }
    let n_p = seq.pulse_count();
    let mut inserted: Vec<TimedGate> = Vec::new();
    let mut report = PaddingReport {
        sequences_per_qubit: vec![0; tc.n_qubits()],
        windows: Vec::new(),
        total_pulses: 0,
    };
    let mut padded_windows = Vec::new();

    for window in extract_idle_windows(tc) {
        let reps = repetitions(window.length, n_p, pulse_duration, min_slack);
        report.windows.push(WindowPadding { window, repetitions: reps });
        if reps == 0 {
            continue;
        }
        padded_windows.push(window);
        report.sequences_per_qubit[window.qubit] += reps;
        report.total_pulses += reps * n_p as u64;
        let l = window.length.as_ps() as u128;
        for j in 0..reps as u128 {
            let rep_start = Time::from_ps((j * l / reps as u128) as u64);
            let rep_end = Time::from_ps(((j + 1) * l / reps as u128) as u64);
            let starts = pulse_starts(rep_end - rep_start, n_p, pulse_duration);
            for (offset, &phase) in starts.into_iter().zip(seq.phases()) {
                let t = window.start + rep_start + offset;
                let [pre, x, post] = pulse_to_gates(window.qubit, phase);
                inserted.push(TimedGate { gate: pre, start: t, duration: Time::ZERO });
                inserted.push(TimedGate { gate: x, start: t, duration: pulse_duration });
                inserted.push(TimedGate {
                    gate: post,
                    start: t + pulse_duration,
                    duration: Time::ZERO,
                });
            }
        }
    }

    let inside_padded = |g: &TimedGate| {
        matches!(g.gate.kind, GateKind::Delay(_))
            && padded_windows
                .iter()
                .any(|w| w.qubit == g.gate.qubits[0] && g.start >= w.start && g.end() <= w.end())
    };
    let mut gates: Vec<TimedGate> = tc.gates().iter().filter(|g| !inside_padded(g)).cloned().collect();
    gates.extend(inserted);
    let padded = TimedCircuit::new(tc.n_qubits(), gates)?;
    if padded.total_duration() > tc.total_duration() {
        return Err(Error::Validation("padding extended the circuit".into()));
    }
    Ok((padded, report))
}
