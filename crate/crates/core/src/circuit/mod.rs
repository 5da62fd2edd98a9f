//! Gate-level circuit representation, lowering, and timing.
//!
//! A [`Circuit`] is an ordered gate list. [`lower_to_native`] rewrites macro
//! gates into the native set `{X, SX, RZ, CZ}`, [`schedule_alap`] assigns start
//! times, and the resulting [`TimedCircuit`] exposes the idle windows that
//! dynamical decoupling later fills.

mod dump;
mod exec;
pub(crate) mod lower;
mod schedule;
mod time;

use std::fmt;

pub use dump::dump;
pub use exec::{circuit_unitary, simulate_ideal};
pub use lower::{lower_to_native, twoq_count};
pub use schedule::{
    busy_fraction, extract_idle_windows, schedule_alap, GateDurations, IdleWindow, NativeKind,
    TimedCircuit, TimedGate,
};
pub use time::Time;

use crate::error::{Error, Result};
use crate::qsim::{ops, Operator, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    X,
    SX,
    /// Virtual Z rotation, angle in radians.
    Rz(f64),
    /// Macro: lowered to `RZ(π/2)·SX·RZ(π/2)`.
    H,
    CZ,
    /// Macro: multi-controlled Z over every listed qubit.
    MCZ,
    /// Scheduling fence with zero duration.
    Barrier,
    Measure,
    Delay(Time),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::SX => "sx",
            GateKind::Rz(_) => "rz",
            GateKind::H => "h",
            GateKind::CZ => "cz",
            GateKind::MCZ => "mcz",
            GateKind::Barrier => "barrier",
            GateKind::Measure => "measure",
            GateKind::Delay(_) => "delay",
        }
    }

    pub fn is_native(&self) -> bool {
        !matches!(self, GateKind::H | GateKind::MCZ)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self { kind, qubits }
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q])
    }

    pub fn sx(q: usize) -> Self {
        Self::new(GateKind::SX, vec![q])
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Rz(theta), vec![q])
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q])
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::new(GateKind::CZ, vec![a, b])
    }

    pub fn mcz(qubits: Vec<usize>) -> Self {
        Self::new(GateKind::MCZ, qubits)
    }

    pub fn measure(q: usize) -> Self {
        Self::new(GateKind::Measure, vec![q])
    }

    pub fn delay(q: usize, duration: Time) -> Self {
        Self::new(GateKind::Delay(duration), vec![q])
    }

    /// Unitary on `self.qubits` in big-endian order, or `None` for gates
    /// without one (barrier, measure, delay).
    pub fn unitary(&self) -> Option<Operator> {
        match self.kind {
            GateKind::X => Some(ops::pauli_x()),
            GateKind::SX => Some(ops::sqrt_x()),
            GateKind::Rz(theta) => Some(ops::rz(theta)),
            GateKind::H => Some(ops::hadamard()),
            GateKind::CZ => Some(ops::mcz(2)),
            GateKind::MCZ => Some(ops::mcz(self.qubits.len())),
            GateKind::Barrier | GateKind::Measure | GateKind::Delay(_) => None,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let expected = match self.kind {
            GateKind::CZ => Some(2),
            GateKind::MCZ | GateKind::Barrier => None,
            _ => Some(1),
        };
        if let Some(k) = expected {
            if self.qubits.len() != k {
                return Err(Error::Operand(format!(
                    "{} takes {k} qubit(s), got {}",
                    self.kind.name(),
                    self.qubits.len()
                )));
            }
        }
        if self.qubits.is_empty() {
            return Err(Error::Operand(format!("{} without qubits", self.kind.name())));
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Operand(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if self.qubits[..i].contains(&q) {
                return Err(Error::Operand(format!("duplicate qubit {q} in {}", self.kind.name())));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let GateKind::Rz(theta) = self.kind {
            write!(f, "({theta})")?;
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| q.to_string()).collect();
        write!(f, " {}", qs.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::Size(n_qubits));
        }
        Ok(Self {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Appends every gate of `other`, which must act on the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Operand(format!(
                "cannot append a {}-qubit fragment to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub(crate) fn from_parts(n_qubits: usize, gates: Vec<Gate>) -> Self {
        Self { n_qubits, gates }
    }
}
