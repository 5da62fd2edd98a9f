use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateKind, Time};
use crate::error::{Error, Result};

/// Native gate kinds that carry a calibrated duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NativeKind {
    X,
    Sx,
    Cz,
    Measure,
}

/// Duration table for timed native gates. `RZ` and barriers always take zero
/// time and a `DELAY` carries its own length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDurations {
    table: BTreeMap<NativeKind, Time>,
}

impl Default for GateDurations {
    /// 32 ns single-qubit pulses, 68 ns CZ, 1.5 µs readout.
    fn default() -> Self {
        Self::empty()
            .with(NativeKind::X, Time::from_ns(32))
            .with(NativeKind::Sx, Time::from_ns(32))
            .with(NativeKind::Cz, Time::from_ns(68))
            .with(NativeKind::Measure, Time::from_ns(1500))
    }
}

impl GateDurations {
    pub fn empty() -> Self {
        Self {
            table: BTreeMap::new(),
        }
    }

    pub fn with(mut self, kind: NativeKind, duration: Time) -> Self {
        self.table.insert(kind, duration);
        self
    }

    pub fn set(&mut self, kind: NativeKind, duration: Time) {
        self.table.insert(kind, duration);
    }

    pub fn native(&self, kind: NativeKind) -> Result<Time> {
        self.table
            .get(&kind)
            .copied()
            .ok_or_else(|| Error::Config(format!("no duration configured for {kind:?}")))
    }

    pub fn of(&self, kind: &GateKind) -> Result<Time> {
        match kind {
            GateKind::Rz(_) | GateKind::Barrier => Ok(Time::ZERO),
            GateKind::Delay(t) => Ok(*t),
            GateKind::X => self.native(NativeKind::X),
            GateKind::SX => self.native(NativeKind::Sx),
            GateKind::CZ => self.native(NativeKind::Cz),
            GateKind::Measure => self.native(NativeKind::Measure),
            GateKind::H | GateKind::MCZ => Err(Error::Config(format!(
                "no duration for macro gate {}; lower the circuit first",
                kind.name()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimedGate {
    pub gate: Gate,
    pub start: Time,
    pub duration: Time,
}

impl TimedGate {
    pub fn end(&self) -> Time {
        self.start + self.duration
    }

    fn occupies(&self) -> bool {
        self.duration > Time::ZERO && !matches!(self.gate.kind, GateKind::Delay(_))
    }
}

/// A circuit with start times, kept sorted by `(start, end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedCircuit {
    n_qubits: usize,
    gates: Vec<TimedGate>,
    total_duration: Time,
}

impl TimedCircuit {
    /// Builds a timed circuit from explicitly placed gates, checking that no
    /// two gates overlap on a qubit.
    pub fn new(n_qubits: usize, mut gates: Vec<TimedGate>) -> Result<Self> {
        gates.sort_by_key(|g| (g.start, g.end()));
        let total_duration = gates.iter().map(TimedGate::end).max().unwrap_or(Time::ZERO);
        let tc = Self {
            n_qubits,
            gates,
            total_duration,
        };
        tc.check_overlaps()?;
        Ok(tc)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[TimedGate] {
        &self.gates
    }

    pub fn total_duration(&self) -> Time {
        self.total_duration
    }

    /// Gates touching `qubit`, in time order.
    pub fn qubit_gates(&self, qubit: usize) -> impl Iterator<Item = &TimedGate> {
        self.gates.iter().filter(move |g| g.gate.qubits.contains(&qubit))
    }

    /// Drops timing information, keeping the time-ordered gate list.
    pub fn to_circuit(&self) -> Circuit {
        Circuit::from_parts(self.n_qubits, self.gates.iter().map(|g| g.gate.clone()).collect())
    }

    fn check_overlaps(&self) -> Result<()> {
        for q in 0..self.n_qubits {
            let mut busy: Vec<(Time, Time)> = self
                .qubit_gates(q)
                .filter(|g| g.duration > Time::ZERO)
                .map(|g| (g.start, g.end()))
                .collect();
            busy.sort();
            for pair in busy.windows(2) {
                if pair[1].0 < pair[0].1 {
                    return Err(Error::Validation(format!(
                        "gates overlap on qubit {q} at {}",
                        pair[1].0
                    )));
                }
            }
        }
        Ok(())
    }
}

/// As-late-as-possible schedule: every gate starts as late as its successors
/// on the same qubits allow, so all final measurements end together at the
/// circuit's total duration and slack collects at the front of each qubit.
pub fn schedule_alap(circuit: &Circuit, durations: &GateDurations) -> Result<TimedCircuit> {
    let n = circuit.n_qubits();
    // Reverse-time ASAP: `avail[q]` is the time-before-end by which q is free.
    let mut avail = vec![Time::ZERO; n];
    let mut placed = Vec::with_capacity(circuit.len());
    for gate in circuit.gates().iter().rev() {
        let duration = durations.of(&gate.kind)?;
        let end_rev = gate.qubits.iter().map(|&q| avail[q]).max().unwrap_or(Time::ZERO);
        let start_rev = end_rev + duration;
        for &q in &gate.qubits {
            avail[q] = start_rev;
        }
        placed.push((gate.clone(), start_rev, duration));
    }
    let total = avail.iter().copied().max().unwrap_or(Time::ZERO);
    let mut gates: Vec<TimedGate> = placed
        .into_iter()
        .rev()
        .map(|(gate, start_rev, duration)| TimedGate {
            gate,
            start: total - start_rev,
            duration,
        })
        .collect();
    gates.sort_by_key(|g| (g.start, g.end()));
    Ok(TimedCircuit {
        n_qubits: n,
        gates,
        total_duration: total,
    })
}

/// A maximal stretch of time in which a qubit runs no gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdleWindow {
    pub qubit: usize,
    pub start: Time,
    pub length: Time,
}

impl IdleWindow {
    pub fn end(&self) -> Time {
        self.start + self.length
    }
}

/// Per-qubit complement of busy intervals within `[0, total_duration]`,
/// ending at the qubit's measurement. `DELAY`s count as idle. Zero-duration
/// gates (virtual `RZ`, barriers) split a window, so nothing inserted into a
/// window needs to commute with them.
pub fn extract_idle_windows(tc: &TimedCircuit) -> Vec<IdleWindow> {
    let mut windows = Vec::new();
    for q in 0..tc.n_qubits {
        let gates: Vec<&TimedGate> = tc.qubit_gates(q).collect();
        let horizon = gates
            .iter()
            .filter(|g| matches!(g.gate.kind, GateKind::Measure))
            .map(|g| g.end())
            .max()
            .unwrap_or(tc.total_duration);
        let mut cursor = Time::ZERO;
        let mut push = |from: Time, to: Time| {
            if to > from {
                windows.push(IdleWindow {
                    qubit: q,
                    start: from,
                    length: to - from,
                });
            }
        };
        for g in gates.iter().filter(|g| g.start < horizon) {
            if g.occupies() {
                push(cursor, g.start);
                cursor = cursor.max(g.end());
            } else if g.duration == Time::ZERO && g.start > cursor {
                push(cursor, g.start);
                cursor = g.start;
            }
        }
        push(cursor, horizon);
    }
    windows
}

/// Fraction of the circuit each qubit spends inside gates (delays excluded).
pub fn busy_fraction(tc: &TimedCircuit) -> Vec<f64> {
    let total = tc.total_duration.as_ps();
    (0..tc.n_qubits)
        .map(|q| {
            if total == 0 {
                return 0.0;
            }
            let busy: u64 = tc
                .qubit_gates(q)
                .filter(|g| g.occupies())
                .map(|g| g.duration.as_ps())
                .sum();
            busy as f64 / total as f64
        })
        .collect()
}
