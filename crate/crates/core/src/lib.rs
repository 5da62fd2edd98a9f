//! Density-matrix simulation of Grover search on small registers, with
//! dynamical-decoupling sequences padded into the idle windows of an
//! as-late-as-possible schedule and noise driven by device calibrations.
//!
//! The pipeline for one experiment cell:
//!
//! 1. [`grover::build_grover_circuit`] builds the macro circuit (`H`, `MCZ`, `X`).
//! 2. [`circuit::lower_to_native`] rewrites it into `X`, `SX`, `RZ`, `CZ`.
//! 3. [`circuit::schedule_alap`] assigns start times from gate durations.
//! 4. [`dd::pad_circuit`] fills idle windows with a decoupling sequence.
//! 5. [`noise::simulate_timed`] evolves the register under the noise model.
//! 6. [`harness::run_experiment`] adds readout error, samples shots and
//!    computes confidence intervals.
//!
//! ```
//! use groverdd::harness::{run_experiment, ExperimentConfig};
//!
//! let cfg = ExperimentConfig::new("010".parse()?, vec![2]);
//! let res = run_experiment(&cfg)?;
//! assert!((res.records[0].success_prob - 0.9453125).abs() < 1e-9);
//! # Ok::<(), groverdd::Error>(())
//! ```
//!
//! Bitstrings are big-endian throughout: qubit 0 is the leftmost character
//! and the most significant bit of a basis-state index.

pub mod bits;
pub mod circuit;
pub mod dd;
pub mod error;
pub mod grover;
pub mod harness;
pub mod noise;
pub mod qsim;

pub use error::{Error, Result};

// The guide's code listings run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/grover.md")]
    mod grover {}
    #[doc = include_str!("../../../book/src/decoupling.md")]
    mod decoupling {}
    #[doc = include_str!("../../../book/src/noise.md")]
    mod noise {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
