//! Dynamical-decoupling sequences and idle-window padding.
//!
//! Every sequence here is a list of π pulses about in-plane axes. A pulse at
//! phase `φ` is emitted as `RZ(−φ) · X · RZ(φ)`: the `RZ`s are virtual, so a
//! pulse costs exactly one `X` duration. Besides CPMG and XY4 the catalog
//! holds the topological family `Tn`, whose phases follow
//! `φ_k = (k−1)(n/2−k)/(n/2)·π`.

mod pad;
mod phase;
mod sequence;

pub use pad::{pad_circuit, pad_circuit_with, pulse_starts, pulse_to_gates, repetitions, PaddingReport, WindowPadding};
pub use phase::PiFraction;
pub use sequence::{
    catalog, catalog_table, make_cpmg, make_tn, make_xy4, tn_block_phases, tn_direct_phases, DDSequence, DdOption,
    TN_PULSE_COUNTS,
};
