//! Exact elements of `ℚ/ℤ`, written additively.

use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_integer::Integer;

/// `num/den ∈ ℚ/ℤ`, standing for the circle value `exp(2πi·num/den)`.
///
/// Always reduced with `0 ≤ num < den`; zero is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// `num/den` reduced modulo 1. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase with zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        num /= g;
        den /= g;
        Phase { num, den }
    }

    /// Like [`Phase::new`] for numerators that may not fit in `i64`.
    pub fn from_i128(num: i128, den: i128) -> Phase {
        assert!(den > 0);
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        Phase::new((r / g) as i64, (den / g) as i64)
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Numerator over a given multiple `d` of the denominator.
    pub fn over(self, d: i64) -> Option<i64> {
        if d % self.den == 0 {
            Some(self.num * (d / self.den))
        } else {
            None
        }
    }

    /// `k·p`.
    pub fn times(self, k: i64) -> Phase {
        Phase::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// Real part of the circle value. Only for reporting.
    pub fn re(self) -> f64 {
        libm::cos(core::f64::consts::TAU * self.num as f64 / self.den as f64)
    }

    /// Imaginary part of the circle value. Only for reporting.
    pub fn im(self) -> f64 {
        libm::sin(core::f64::consts::TAU * self.num as f64 / self.den as f64)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        if self.den == rhs.den {
            let s = self.num + rhs.num;
            return if s >= self.den {
                Phase::new(s - self.den, self.den)
            } else {
                Phase::new(s, self.den)
            };
        }
        let l = self.den.lcm(&rhs.den) as i128;
        let a = self.num as i128 * (l / self.den as i128);
        let b = rhs.num as i128 * (l / rhs.den as i128);
        Phase::from_i128(a + b, l)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        if self.num == 0 {
            self
        } else {
            Phase { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl core::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
