//! Exact roots of unity and signs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

/// A root of unity `exp(2πi r)` stored as a rational `r ∈ [0, 1)`.
///
/// The group law is written additively: `a + b` is the product of the two
/// roots of unity.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub const ZERO: Phase = Phase(Ratio::new_raw(0, 1));
    pub const HALF: Phase = Phase(Ratio::new_raw(1, 2));

    /// `exp(2πi num/den)`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "phase denominator must be nonzero");
        Self::reduce(Ratio::new(num, den))
    }

    fn reduce(r: Ratio<i64>) -> Self {
        Phase(r - r.floor())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> i64 {
        self.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.to_f64())
    }

    /// Numerator over a common denominator `n`, if `n` is a multiple of the order.
    pub fn scaled(&self, n: i64) -> Option<i64> {
        if n % self.denom() == 0 {
            Some(self.numer() * (n / self.denom()))
        } else {
            None
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        Phase::reduce(self.0 + o.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, o: Phase) {
        *self = *self + o;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        Phase::reduce(self.0 - o.0)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, o: Phase) {
        *self = *self - o;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::reduce(-self.0)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        Phase::reduce(self.0 * k)
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

pub fn lcm_orders<'a>(phases: impl IntoIterator<Item = &'a Phase>) -> i64 {
    phases.into_iter().fold(1, |acc, p| acc.lcm(&p.denom()))
}

/// An element of `{+1, -1}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn bit(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_phase(self) -> Phase {
        match self {
            Sign::Plus => Phase::ZERO,
            Sign::Minus => Phase::HALF,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Sign) -> Sign {
        Sign::from_bit(self.bit() ^ o.bit())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
