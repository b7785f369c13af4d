//! Exact half-integer arithmetic.
//!
//! Every archimedean parameter handled by this crate lives in `ℤ + k/2`.
//! Values are stored as doubled integers so that no rounding can ever occur
//! and so that ties (equalities between parameters) are decidable exactly.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A half-integer, stored as its doubled value (`a = doubled / 2`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    /// Builds a half-integer from its doubled value.
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    /// Builds a half-integer from a plain integer.
    pub const fn from_int(value: i64) -> Self {
        HalfInt { doubled: 2 * value }
    }

    /// The stored doubled value `2a`.
    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    /// True if the value is a plain integer.
    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if the half-integer is integral.
    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    /// True if `self` lies in `ℤ + parity/2` for the given doubled parity.
    ///
    /// `parity` is interpreted mod 2: entries of a rank-`n` spectrum must
    /// satisfy `doubled ≡ n − 1 (mod 2)`.
    pub fn has_parity(self, parity: i64) -> bool {
        (self.doubled - parity).rem_euclid(2) == 0
    }

    /// Multiplies by an integer scalar.
    pub fn scale(self, k: i64) -> Self {
        HalfInt {
            doubled: self.doubled * k,
        }
    }

    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

// Half-integers read better as `3/2` than as a struct dump in assertion
// failures, so Debug forwards to Display.
impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Extended value with symbolic endpoints, used for gap counting where the
/// boundary entries are `±∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Extended {
    NegInfinity,
    Finite(HalfInt),
    PosInfinity,
}

impl Extended {
    /// Strictly-between test `lo < x < hi` honouring symbolic endpoints.
    pub fn strictly_between(x: HalfInt, lo: Extended, hi: Extended) -> bool {
        Extended::Finite(x) > lo && Extended::Finite(x) < hi
    }
}

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        match self {
            Extended::NegInfinity => Extended::PosInfinity,
            Extended::Finite(h) => Extended::Finite(-h),
            Extended::PosInfinity => Extended::NegInfinity,
        }
    }
}
