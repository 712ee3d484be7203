use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat_serde, ExactInt, Interval};

/// `constant + slope·θ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ThetaLinear<I: ExactInt> {
    #[serde(rename = "const", with = "rat_serde")]
    pub constant: Ratio<I>,
    #[serde(rename = "theta", with = "rat_serde")]
    pub slope: Ratio<I>,
}

impl<I: ExactInt> ThetaLinear<I> {
    pub fn new(constant: Ratio<I>, slope: Ratio<I>) -> Self {
        Self { constant, slope }
    }

    pub fn from_ints(constant: I, slope: I) -> Self {
        Self::new(Ratio::from_integer(constant), Ratio::from_integer(slope))
    }

    pub fn zero() -> Self {
        Self::new(Ratio::zero(), Ratio::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn eval(&self, theta: &Ratio<I>) -> Ratio<I> {
        &self.constant + &self.slope * theta
    }

    pub fn scale(&self, r: &Ratio<I>) -> Self {
        Self::new(&self.constant * r, &self.slope * r)
    }

    /// Re-expresses a quantity written in θ in terms of `φ = 1 − θ`.
    pub fn in_reflected_base(&self) -> Self {
        Self::new(&self.constant + &self.slope, -self.slope.clone())
    }

    pub fn to_poly(&self) -> ThetaPoly<I> {
        ThetaPoly::new(vec![self.constant.clone(), self.slope.clone()])
    }
}

impl<I: ExactInt> Add for &ThetaLinear<I> {
    type Output = ThetaLinear<I>;
    fn add(self, rhs: Self) -> ThetaLinear<I> {
        ThetaLinear::new(&self.constant + &rhs.constant, &self.slope + &rhs.slope)
    }
}

impl<I: ExactInt> Sub for &ThetaLinear<I> {
    type Output = ThetaLinear<I>;
    fn sub(self, rhs: Self) -> ThetaLinear<I> {
        ThetaLinear::new(&self.constant - &rhs.constant, &self.slope - &rhs.slope)
    }
}

impl<I: ExactInt> Neg for &ThetaLinear<I> {
    type Output = ThetaLinear<I>;
    fn neg(self) -> ThetaLinear<I> {
        ThetaLinear::new(-self.constant.clone(), -self.slope.clone())
    }
}

impl<I: ExactInt> fmt::Display for ThetaLinear<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_negative() {
            write!(f, "{} - {}θ", self.constant, -self.slope.clone())
        } else {
            write!(f, "{} + {}θ", self.constant, self.slope)
        }
    }
}

/// Sign of a θ-linear quantity over a whole window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Indeterminate,
}

/// Decides the sign of `x` on the open window by evaluating at the endpoints.
pub fn tl_sign<I: ExactInt>(x: &ThetaLinear<I>, window: &Interval<I>) -> Sign {
    let at_lo = x.eval(window.lo());
    let at_hi = x.eval(window.hi());
    let zero = Ratio::zero();
    if at_lo.is_zero() && at_hi.is_zero() {
        Sign::Zero
    } else if at_lo >= zero && at_hi >= zero {
        Sign::Positive
    } else if at_lo <= zero && at_hi <= zero {
        Sign::Negative
    } else {
        Sign::Indeterminate
    }
}

/// A polynomial in θ with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly<I: ExactInt> {
    coeffs: Vec<Ratio<I>>,
}

impl<I: ExactInt> ThetaPoly<I> {
    pub fn new(mut coeffs: Vec<Ratio<I>>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Ratio<I>) -> Self {
        Self::new(vec![c])
    }

    /// The monomial θ^k.
    pub fn theta_pow(k: usize) -> Self {
        let mut coeffs = vec![Ratio::zero(); k + 1];
        coeffs[k] = Ratio::from_integer(I::one());
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Ratio<I>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, theta: &Ratio<I>) -> Ratio<I> {
        self.coeffs
            .iter()
            .rev()
            .fold(Ratio::zero(), |acc, c| acc * theta + c)
    }
}

impl<I: ExactInt> Add for &ThetaPoly<I> {
    type Output = ThetaPoly<I>;
    fn add(self, rhs: Self) -> ThetaPoly<I> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Ratio::zero();
        ThetaPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<I: ExactInt> Neg for &ThetaPoly<I> {
    type Output = ThetaPoly<I>;
    fn neg(self) -> ThetaPoly<I> {
        ThetaPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<I: ExactInt> Sub for &ThetaPoly<I> {
    type Output = ThetaPoly<I>;
    fn sub(self, rhs: Self) -> ThetaPoly<I> {
        self + &(-rhs)
    }
}

impl<I: ExactInt> Mul for &ThetaPoly<I> {
    type Output = ThetaPoly<I>;
    fn mul(self, rhs: Self) -> ThetaPoly<I> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return ThetaPoly::new(Vec::new());
        }
        let mut out = vec![Ratio::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        ThetaPoly::new(out)
    }
}

/// Exact polynomial identity: coefficient sequences agree.
pub fn poly_identity<I: ExactInt>(lhs: &ThetaPoly<I>, rhs: &ThetaPoly<I>) -> bool {
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    type L = ThetaLinear<i64>;
    type P = ThetaPoly<i64>;

    #[test]
    fn sign_examples() {
        let w = Interval::new(rat(1, 4), rat(3, 4)).unwrap();
        assert_eq!(tl_sign(&L::zero(), &w), Sign::Zero);
        assert_eq!(tl_sign(&L::new(rat_int(-1), rat_int(2)), &w), Sign::Indeterminate);
        assert_eq!(tl_sign(&L::new(rat_int(1), rat_int(0)), &w), Sign::Positive);
        // vanishing at an endpoint of an open window still decides the sign
        assert_eq!(tl_sign(&L::new(rat(-1, 4), rat_int(1)), &w), Sign::Positive);
    }

    #[test]
    fn identities() {
        assert!(poly_identity(&P::theta_pow(2), &P::theta_pow(2)));
        let t1 = &P::theta_pow(1) + &P::constant(rat_int(1));
        assert!(!poly_identity(&P::theta_pow(1), &t1));
        let sq = &t1 * &t1;
        assert_eq!(sq.coeffs(), &[rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!((&sq - &sq).degree(), None);
    }

    #[test]
    fn reflected_base() {
        // 3(239 - 374θ) = 3(239 - 374) + 3·374 φ with φ = 1 - θ
        let t = L::new(rat_int(717), rat_int(-1122));
        let r = t.in_reflected_base();
        assert_eq!(r, L::new(rat_int(-405), rat_int(1122)));
        assert_eq!(r.eval(&rat(2, 3)), t.eval(&rat(1, 3)));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&L::new(rat_int(239), rat_int(-374))).unwrap();
        assert_eq!(s, r#"{"const":"239/1","theta":"-374/1"}"#);
    }
}
