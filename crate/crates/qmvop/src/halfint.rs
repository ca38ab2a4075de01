use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A half-integer stored as its doubled value.
///
/// Spins ℓ, ℓ₁, ℓ₂ (nonnegative) and basis projections p, m (any sign) are
/// both represented this way; constructors of representation objects validate
/// nonnegativity where it matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    /// Value 2x, i.e. `from_twice(3)` is 3/2.
    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Dimension 2ℓ+1 of the spin-ℓ representation.
    pub fn dim(&self) -> usize {
        debug_assert!(self.twice >= 0, "dim() on a negative half-integer");
        (self.twice + 1) as usize
    }

    /// Errors unless the value is a valid spin label (≥ 0).
    pub fn require_spin(&self) -> Result<()> {
        if self.twice < 0 {
            return Err(Error::InvalidArgument(format!("spin must be >= 0, got {self}")));
        }
        Ok(())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}
