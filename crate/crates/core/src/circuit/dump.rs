use std::fmt::Write;

use super::{GateKind, TimedCircuit};

/// Line-oriented debug dump, one gate per line:
///
/// ```text
/// # n_qubits=1 total_duration=0.000001532000
/// t_start  duration  kind  targets  params
/// 0.000000000000  0.000000032000  x  0  -
/// 0.000000032000  0.000001500000  measure  0  -
/// ```
///
/// Times are seconds with picosecond resolution; `rz` angles are radians.
pub fn dump(tc: &TimedCircuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n_qubits={} total_duration={}", tc.n_qubits(), tc.total_duration());
    out.push_str("t_start  duration  kind  targets  params\n");
    for g in tc.gates() {
        let targets: Vec<String> = g.gate.qubits.iter().map(|q| q.to_string()).collect();
        let params = match g.gate.kind {
            GateKind::Rz(theta) => format!("{theta:.12}"),
            _ => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "{}  {}  {}  {}  {}",
            g.start,
            g.duration,
            g.gate.kind.name(),
            targets.join(","),
            params
        );
    }
    out
}
