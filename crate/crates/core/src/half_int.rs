use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i32) -> Self {
        Self { twice: 2 * n }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    pub fn to_real<T: Real>(self) -> T {
        T::from_i32(self.twice).expect("i32 representable") / T::lit(2.0)
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Number of projections `2j + 1` for a magnitude.
    pub fn multiplicity(self) -> usize {
        debug_assert!(self.twice >= 0);
        self.twice as usize + 1
    }

    /// `j(j+1)` as a float.
    pub fn casimir<T: Real>(self) -> T {
        let j = self.to_real::<T>();
        j * (j + T::one())
    }

    /// `j(j+1)` as an exact rational.
    pub fn casimir_exact(self) -> BigRational {
        let t = BigInt::from(self.twice);
        BigRational::new(&t * (&t + BigInt::from(2)), BigInt::from(4))
    }

    /// Rejects negative magnitudes.
    pub fn magnitude(self) -> Result<Self> {
        if self.twice < 0 {
            Err(Error::InvalidSpin(self))
        } else {
            Ok(self)
        }
    }

    /// `true` when `self` is an allowed projection of the magnitude `j`.
    pub fn is_projection_of(self, j: HalfInt) -> bool {
        j.twice >= 0 && self.twice.abs() <= j.twice && (j.twice - self.twice) % 2 == 0
    }

    /// Allowed projections of `self`, from `+j` down to `-j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let top = self.twice;
        (0..=2 * top)
            .step_by(2)
            .map(move |k| HalfInt::from_twice(top - k))
    }

    pub(crate) fn mul_count(self, n: usize) -> HalfInt {
        HalfInt::from_twice(self.twice * n as i32)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Accepts `"3/2"`, `"-1/2"`, `"2"` and decimal forms such as `"1.5"`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseHalfInt(s.to_owned());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            }
        } else if let Ok(n) = t.parse::<i32>() {
            n.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad)
        } else {
            let x: f64 = t.parse().map_err(|_| bad())?;
            let twice = 2.0 * x;
            if twice.is_finite() && twice == twice.round() && twice.abs() < f64::from(i32::MAX) {
                Ok(HalfInt::from_twice(twice as i32))
            } else {
                Err(bad())
            }
        }
    }
}
