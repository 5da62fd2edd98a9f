use std::fmt;
use std::ops::{Add, AddAssign, Sub};

/// Circuit time in integer picoseconds.
///
/// Integer ticks keep schedule arithmetic exact, so abutting gates share
/// boundaries without floating-point drift.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Time(u64);

impl Time {
    pub const ZERO: Time = Time(0);

    pub const fn from_ps(ps: u64) -> Self {
        Time(ps)
    }

    pub const fn from_ns(ns: u64) -> Self {
        Time(ns * 1000)
    }

    /// Rounds a (non-negative) nanosecond value to the nearest picosecond.
    pub fn from_ns_f64(ns: f64) -> Self {
        Time((ns * 1000.0).round().max(0.0) as u64)
    }

    pub fn from_secs_f64(secs: f64) -> Self {
        Time((secs * 1e12).round().max(0.0) as u64)
    }

    pub const fn as_ps(self) -> u64 {
        self.0
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 * 1e-12
    }

    pub fn saturating_sub(self, other: Time) -> Time {
        Time(self.0.saturating_sub(other.0))
    }
}

impl Add for Time {
    type Output = Time;

    fn add(self, rhs: Time) -> Time {
        Time(self.0 + rhs.0)
    }
}

impl AddAssign for Time {
    fn add_assign(&mut self, rhs: Time) {
        self.0 += rhs.0;
    }
}

impl Sub for Time {
    type Output = Time;

    fn sub(self, rhs: Time) -> Time {
        Time(self.0 - rhs.0)
    }
}

/// Seconds with twelve fixed decimals, printed exactly from the tick count.
impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:012}", self.0 / 1_000_000_000_000, self.0 % 1_000_000_000_000)
    }
}
