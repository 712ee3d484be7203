//! Exact scalars: Gaussian rationals, formal θ-phases, θ-linear and θ-polynomial
//! quantities, and open rational intervals.
//!
//! Everything here is generic over the backing integer type. The crate root
//! exposes `BigInt` instantiations; `i64` works for small experiments but can
//! overflow on large parameter grids.

mod gauss;
mod interval;
mod phase;
mod theta;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use gauss::GaussRat;
pub use interval::Interval;
pub use phase::{root_of_unity, PhaseScalar};
pub use theta::{poly_identity, tl_sign, Sign, ThetaLinear, ThetaPoly};

use crate::error::{Error, Result};

/// Integer types usable as the ground ring of the exact scalars.
pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Lifts a machine integer into `I`.
pub fn int<I: ExactInt>(v: i64) -> I {
    I::from_i64(v).expect("i64 does not fit the integer type")
}

pub fn rat<I: ExactInt>(num: i64, den: i64) -> Ratio<I> {
    Ratio::new(int(num), int(den))
}

pub fn rat_int<I: ExactInt>(v: i64) -> Ratio<I> {
    Ratio::from_integer(int(v))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rat<I: ExactInt>(text: &str) -> Result<Ratio<I>> {
    let text = text.trim();
    let bad = || Error::BadInput(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: I = num.parse().map_err(|_| bad())?;
    let den: I = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

/// Always `num/den`, also for integers.
pub fn format_rat<I: ExactInt>(r: &Ratio<I>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `true` when `4 r` is an integer.
pub fn is_quarter_integer<I: ExactInt>(r: &Ratio<I>) -> bool {
    (r * rat_int::<I>(4)).is_integer()
}

/// Serde adapter storing rationals as `"num/den"` strings.
pub mod rat_serde {
    use super::{format_rat, parse_rat, ExactInt};
    use num_rational::Ratio;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<I: ExactInt, S: Serializer>(r: &Ratio<I>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, I: ExactInt, D: Deserializer<'de>>(d: D) -> Result<Ratio<I>, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(D::Error::custom)
    }
}

/// Same as [`rat_serde`] for integers, stored as decimal strings.
pub mod int_serde {
    use super::ExactInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<I: ExactInt, S: Serializer>(v: &I, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, I: ExactInt, D: Deserializer<'de>>(d: D) -> Result<I, D::Error> {
        let text = String::deserialize(d)?;
        text.parse()
            .map_err(|_| D::Error::custom(format!("not an integer: {text:?}")))
    }
}
