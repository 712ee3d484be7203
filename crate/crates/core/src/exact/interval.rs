use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{rat, rat_int, rat_serde, ExactInt};
use crate::error::{Error, Result};

/// An open interval `(lo, hi)` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Interval<I: ExactInt> {
    #[serde(with = "rat_serde")]
    lo: Ratio<I>,
    #[serde(with = "rat_serde")]
    hi: Ratio<I>,
}

impl<I: ExactInt> Interval<I> {
    pub fn new(lo: Ratio<I>, hi: Ratio<I>) -> Result<Self> {
        if lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::BadInput(format!("empty interval ({lo}, {hi})")))
        }
    }

    pub fn lo(&self) -> &Ratio<I> {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio<I> {
        &self.hi
    }

    pub fn contains(&self, x: &Ratio<I>) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn midpoint(&self) -> Ratio<I> {
        (&self.lo + &self.hi) * rat::<I>(1, 2)
    }

    pub fn width(&self) -> Ratio<I> {
        &self.hi - &self.lo
    }

    pub fn is_within(&self, outer: &Interval<I>) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    pub fn intersects(&self, other: &Interval<I>) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Image under `x ↦ 1 − x`.
    pub fn reflect(&self) -> Self {
        let one = rat_int::<I>(1);
        Self {
            lo: &one - &self.hi,
            hi: &one - &self.lo,
        }
    }
}
