use std::fmt;
use std::ops::Add;

/// An exact rational multiple of π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiFraction {
    num: i64,
    den: i64,
}

impl PiFraction {
    pub const ZERO: PiFraction = PiFraction { num: 0, den: 1 };
    pub const PI: PiFraction = PiFraction { num: 1, den: 1 };
    pub const HALF_PI: PiFraction = PiFraction { num: 1, den: 2 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = den.signum();
        let (num, den) = (num * sign, den * sign);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    /// Representative in `[0, 2π)`.
    pub fn reduced(self) -> Self {
        Self::new(self.num.rem_euclid(2 * self.den), self.den)
    }

    pub fn radians(self) -> f64 {
        self.num as f64 / self.den as f64 * std::f64::consts::PI
    }
}

impl Add for PiFraction {
    type Output = PiFraction;

    fn add(self, rhs: PiFraction) -> PiFraction {
        PiFraction::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

/// Formats the coefficient of π: `0`, `1`, `-3`, `4/3`.
impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
