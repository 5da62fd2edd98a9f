use std::fmt::Write;
use std::str::FromStr;

use super::PiFraction;
use crate::error::{Error, Result};
use crate::qsim::{ops, Operator};

/// Pulse counts of the supported topological sequences.
pub const TN_PULSE_COUNTS: [usize; 6] = [2, 4, 6, 8, 10, 12];

/// A train of π pulses, each about the in-plane axis at the listed phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DDSequence {
    name: String,
    phases: Vec<PiFraction>,
}

impl DDSequence {
    pub fn new(name: impl Into<String>, phases: Vec<PiFraction>) -> Result<Self> {
        if phases.is_empty() || phases.len() % 2 != 0 {
            return Err(Error::Input(format!(
                "a decoupling sequence needs an even, non-zero pulse count (got {})",
                phases.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            phases,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phases(&self) -> &[PiFraction] {
        &self.phases
    }

    pub fn pulse_count(&self) -> usize {
        self.phases.len()
    }

    /// Product of the ideal pulse unitaries in time order.
    pub fn ideal_propagator(&self) -> Operator {
        self.phases
            .iter()
            .fold(ops::identity(2), |acc, p| ops::pi_pulse(p.radians()) * acc)
    }
}

/// `X − X`.
pub fn make_cpmg() -> DDSequence {
    DDSequence::new("CPMG", vec![PiFraction::ZERO; 2]).expect("two pulses")
}

/// `X − Y − X − Y`, with `Y` the in-plane axis at `+π/2`.
pub fn make_xy4() -> DDSequence {
    let (x, y) = (PiFraction::ZERO, PiFraction::HALF_PI);
    DDSequence::new("XY4", vec![x, y, x, y]).expect("four pulses")
}

/// Phases `φ_k = (k−1)(n/2−k)/(n/2)·π`, `k = 1..=n`, without reduction.
pub fn tn_direct_phases(n_pulses: usize) -> Vec<PiFraction> {
    let half = (n_pulses / 2) as i64;
    (1..=n_pulses as i64)
        .map(|k| PiFraction::new((k - 1) * (half - k), half))
        .collect()
}

/// Block construction from the first phases of the direct formula.
///
/// For `n = 4l` the pulses are `r, r⁻¹, r+π, r⁻¹+π` with `r = (φ₁…φ_l)` and
/// `r⁻¹` its reversal; for `n = 2m` with `m` odd they are `r, r+π` with
/// `r = (φ₁…φ_m)`.
pub fn tn_block_phases(n_pulses: usize) -> Vec<PiFraction> {
    let phi = tn_direct_phases(n_pulses);
    let shift = |r: &[PiFraction]| r.iter().map(|&p| p + PiFraction::PI).collect::<Vec<_>>();
    let blocks: Vec<PiFraction> = if n_pulses % 4 == 0 {
        let r = &phi[..n_pulses / 4];
        let inv: Vec<PiFraction> = r.iter().rev().copied().collect();
        [r.to_vec(), inv.clone(), shift(r), shift(&inv)].concat()
    } else {
        let r = &phi[..n_pulses / 2];
        [r.to_vec(), shift(r)].concat()
    };
    blocks.into_iter().map(PiFraction::reduced).collect()
}

/// Topological sequence `Tn` for `n ∈ {2, 4, …, 12}`.
///
/// The phases come from the direct formula reduced mod 2π; construction fails
/// if they ever disagree with the block structure pulse by pulse.
pub fn make_tn(n_pulses: usize) -> Result<DDSequence> {
    if !TN_PULSE_COUNTS.contains(&n_pulses) {
        return Err(Error::Input(format!(
            "T{n_pulses} is not supported; pulse count must be one of {TN_PULSE_COUNTS:?}"
        )));
    }
    let direct: Vec<PiFraction> = tn_direct_phases(n_pulses).into_iter().map(PiFraction::reduced).collect();
    let blocks = tn_block_phases(n_pulses);
    for (i, (a, b)) in direct.iter().zip(&blocks).enumerate() {
        let d = ops::phase_distance(&ops::pi_pulse(a.radians()), &ops::pi_pulse(b.radians()));
        if d > 1e-12 {
            return Err(Error::Validation(format!(
                "T{n_pulses} pulse {} disagrees: direct {a}π vs block {b}π",
                i + 1
            )));
        }
    }
    DDSequence::new(format!("T{n_pulses}"), direct)
}

/// Every sequence the harness can insert: CPMG, XY4, T2 … T12.
pub fn catalog() -> Vec<DDSequence> {
    let mut all = vec![make_cpmg(), make_xy4()];
    all.extend(TN_PULSE_COUNTS.iter().map(|&n| make_tn(n).expect("supported count")));
    all
}

/// Text table of the catalog, phases in units of π.
pub fn catalog_table() -> String {
    let mut out = String::from("name  pulses  phases/pi\n");
    for seq in catalog() {
        let phases: Vec<String> = seq.phases().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}  {}  {}", seq.name(), seq.pulse_count(), phases.join(" "));
    }
    out
}

/// Decoupling choice for an experiment: bare idling or one catalog sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DdOption {
    Free,
    Sequence(DDSequence),
}

impl DdOption {
    pub fn label(&self) -> &str {
        match self {
            DdOption::Free => "free",
            DdOption::Sequence(s) => s.name(),
        }
    }

    pub fn sequence(&self) -> Option<&DDSequence> {
        match self {
            DdOption::Free => None,
            DdOption::Sequence(s) => Some(s),
        }
    }
}

impl FromStr for DdOption {
    type Err = Error;

    /// Case-insensitive: `free`, `cpmg`, `xy4`, `t2` … `t12`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "free" | "none" => Ok(DdOption::Free),
            "cpmg" => Ok(DdOption::Sequence(make_cpmg())),
            "xy4" => Ok(DdOption::Sequence(make_xy4())),
            _ => lower
                .strip_prefix('t')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::Config(format!("unknown decoupling option {s:?}")))
                .and_then(|n| make_tn(n).map_err(|e| Error::Config(e.to_string())))
                .map(DdOption::Sequence),
        }
    }
}
