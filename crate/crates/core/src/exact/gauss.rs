use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rat, rat, rat_int, rat_serde, ExactInt};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GaussRat<I: ExactInt> {
    #[serde(with = "rat_serde")]
    pub re: Ratio<I>,
    #[serde(with = "rat_serde")]
    pub im: Ratio<I>,
}

impl<I: ExactInt> GaussRat<I> {
    pub fn new(re: Ratio<I>, im: Ratio<I>) -> Self {
        Self { re, im }
    }

    pub fn real(re: Ratio<I>) -> Self {
        Self::new(re, Ratio::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(rat_int(v))
    }

    pub fn i() -> Self {
        Self::new(Ratio::zero(), Ratio::one())
    }

    /// `(1 - i)/2`, the generator of the half-lattice used by ψ₁₀ and ψ₁₁.
    pub fn half_one_minus_i() -> Self {
        Self::new(rat(1, 2), rat(-1, 2))
    }

    /// `(1 + i)/2`.
    pub fn half_one_plus_i() -> Self {
        Self::new(rat(1, 2), rat(1, 2))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn scale(&self, r: &Ratio<I>) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Membership in `ℤ + ℤ(1−i)/2`: writing `x = a + b(1−i)/2` requires
    /// `b = −2·im` and `a = re + im` to be integers.
    pub fn in_half_lattice(&self) -> bool {
        let two = rat_int::<I>(2);
        (&self.im * &two).is_integer() && (&self.re + &self.im).is_integer()
    }
}

impl<I: ExactInt> Zero for GaussRat<I> {
    fn zero() -> Self {
        Self::new(Ratio::zero(), Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<I: ExactInt> One for GaussRat<I> {
    fn one() -> Self {
        Self::new(Ratio::one(), Ratio::zero())
    }
}

impl<I: ExactInt> Add for &GaussRat<I> {
    type Output = GaussRat<I>;
    fn add(self, rhs: Self) -> GaussRat<I> {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<I: ExactInt> Sub for &GaussRat<I> {
    type Output = GaussRat<I>;
    fn sub(self, rhs: Self) -> GaussRat<I> {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<I: ExactInt> Mul for &GaussRat<I> {
    type Output = GaussRat<I>;
    fn mul(self, rhs: Self) -> GaussRat<I> {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<I: ExactInt> Neg for &GaussRat<I> {
    type Output = GaussRat<I>;
    fn neg(self) -> GaussRat<I> {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$f:ident),*) => {$(
        impl<I: ExactInt> $tr for GaussRat<I> {
            type Output = GaussRat<I>;
            fn $f(self, rhs: Self) -> GaussRat<I> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<I: ExactInt> Neg for GaussRat<I> {
    type Output = GaussRat<I>;
    fn neg(self) -> GaussRat<I> {
        -&self
    }
}

impl<I: ExactInt> fmt::Display for GaussRat<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im < Ratio::zero() => {
                write!(f, "{} - {}i", self.re, -self.im.clone())
            }
            (false, false) => write!(f, "{} + {}i", self.re, self.im),
        }
    }
}

impl<I: ExactInt> GaussRat<I> {
    /// `{"re":"a/b","im":"c/d"}`-style compact text, used in tables.
    pub fn to_pair_string(&self) -> String {
        format!("({}, {})", format_rat(&self.re), format_rat(&self.im))
    }
}
