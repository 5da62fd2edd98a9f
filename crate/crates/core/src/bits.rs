//! Bitstrings in the crate-wide big-endian convention.
//!
//! Qubit 0 is the leftmost character, so `"011"` is basis index 3 on a
//! three-qubit register and qubit 0 maps to the most significant bit of the
//! index. Every distribution, histogram and CSV file uses this ordering.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitstring {
    bits: Vec<bool>,
}

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Input("bitstring must not be empty".into()));
        }
        Ok(Self { bits })
    }

    /// Bitstring of length `n_qubits` whose big-endian value is `index`.
    pub fn from_index(index: usize, n_qubits: usize) -> Self {
        let bits = (0..n_qubits)
            .map(|q| (index >> (n_qubits - 1 - q)) & 1 == 1)
            .collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, qubit: usize) -> bool {
        self.bits[qubit]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Basis index of this bitstring.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// Qubits whose target value is 0.
    pub fn zero_qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(q, _)| q)
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!(
                    "bitstring {s:?} contains invalid character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
