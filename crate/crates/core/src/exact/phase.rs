use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{is_quarter_integer, rat_int, ExactInt, GaussRat};
use crate::error::{Error, Result};

/// A finite formal sum `Σ c_r · e(ϑ·r)` with Gaussian-rational coefficients, where
/// `e(x) = exp(2πix)` and ϑ is a transcendental symbol.
///
/// Distinct exponents are treated as linearly independent, so equality is
/// coefficient-wise. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseScalar<I: ExactInt> {
    terms: BTreeMap<Ratio<I>, GaussRat<I>>,
}

impl<I: ExactInt> PhaseScalar<I> {
    pub fn constant(c: GaussRat<I>) -> Self {
        Self::term(c, Ratio::zero())
    }

    /// The pure phase `e(ϑ·r)`.
    pub fn phase(r: Ratio<I>) -> Self {
        Self::term(GaussRat::one(), r)
    }

    /// `e(ϑ)^k` for an integer power.
    pub fn phase_pow(k: i64) -> Self {
        Self::phase(rat_int(k))
    }

    pub fn term(c: GaussRat<I>, r: Ratio<I>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        Self { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(GaussRat::from_int(v))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Ratio<I>, &GaussRat<I>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, r: Ratio<I>, c: GaussRat<I>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&r);
                }
            }
            None => {
                self.terms.insert(r, c);
            }
        }
    }

    /// The θ-free value, if there is one.
    pub fn as_constant(&self) -> Option<GaussRat<I>> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (r, c) = self.terms.iter().next()?;
                r.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Complex conjugate: coefficients conjugated, exponents negated.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(r, c)| (-r.clone(), c.conj())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat<I>) -> Self {
        let mut out = Self::zero();
        for (r, x) in &self.terms {
            out.accumulate(r.clone(), x * c);
        }
        out
    }

    /// Rewrites `e(ϑ·r)` as `root_of_unity(offset·r) · e(ϑ·slope·r)`, i.e. re-expresses
    /// the symbol `ϑ = slope·θ + offset` in terms of θ.
    pub fn rebase(&self, slope: &Ratio<I>, offset: &Ratio<I>) -> Result<Self> {
        let mut out = Self::zero();
        for (r, c) in &self.terms {
            let root = root_of_unity(&(offset * r))?;
            out.accumulate(slope * r, &root * c);
        }
        Ok(out)
    }
}

/// `e(s)` for a quarter-integer `s`, i.e. `i^(4s mod 4)`.
pub fn root_of_unity<I: ExactInt>(s: &Ratio<I>) -> Result<GaussRat<I>> {
    if !is_quarter_integer(s) {
        return Err(Error::DomainPhase(s.to_string()));
    }
    let four = rat_int::<I>(4);
    let k = (s * four).to_integer().mod_floor(&super::int(4));
    Ok(GaussRat::i_pow(k.to_i64().expect("residue mod 4")))
}

impl<I: ExactInt> Zero for PhaseScalar<I> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<I: ExactInt> One for PhaseScalar<I> {
    fn one() -> Self {
        Self::constant(GaussRat::one())
    }
}

impl<I: ExactInt> Add for &PhaseScalar<I> {
    type Output = PhaseScalar<I>;
    fn add(self, rhs: Self) -> PhaseScalar<I> {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.accumulate(r.clone(), c.clone());
        }
        out
    }
}

impl<I: ExactInt> Neg for &PhaseScalar<I> {
    type Output = PhaseScalar<I>;
    fn neg(self) -> PhaseScalar<I> {
        PhaseScalar {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

impl<I: ExactInt> Sub for &PhaseScalar<I> {
    type Output = PhaseScalar<I>;
    fn sub(self, rhs: Self) -> PhaseScalar<I> {
        self + &(-rhs)
    }
}

impl<I: ExactInt> Mul for &PhaseScalar<I> {
    type Output = PhaseScalar<I>;
    fn mul(self, rhs: Self) -> PhaseScalar<I> {
        let mut out = PhaseScalar::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &rhs.terms {
                out.accumulate(ra + rb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$f:ident),*) => {$(
        impl<I: ExactInt> $tr for PhaseScalar<I> {
            type Output = PhaseScalar<I>;
            fn $f(self, rhs: Self) -> PhaseScalar<I> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<I: ExactInt> Neg for PhaseScalar<I> {
    type Output = PhaseScalar<I>;
    fn neg(self) -> PhaseScalar<I> {
        -&self
    }
}

impl<I: ExactInt> fmt::Display for PhaseScalar<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (r, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if r.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·e({r}θ)")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_bigint::BigInt;

    type P = PhaseScalar<BigInt>;
    type G = GaussRat<BigInt>;

    #[test]
    fn exponents_add() {
        let q = P::phase(rat(1, 4));
        assert_eq!(&q * &q, P::phase(rat(1, 2)));
    }

    #[test]
    fn unit_is_neutral() {
        let x = &P::phase(rat(3, 2)) + &P::constant(G::i());
        assert_eq!(&P::one() * &x, x);
    }

    #[test]
    fn gaussian_coefficients_multiply() {
        let x = P::constant(G::half_one_minus_i()) * P::constant(G::i());
        assert_eq!(x, P::constant(G::half_one_plus_i()));
    }

    #[test]
    fn conjugation() {
        let x = P::term(G::half_one_minus_i(), rat(1, 1));
        assert_eq!(x.conj(), P::term(G::half_one_plus_i(), rat(-1, 1)));
        assert_eq!(P::one().conj(), P::one());
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = P::phase(rat(1, 3));
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity::<BigInt>(&rat(1, 4)).unwrap(), G::i());
        assert_eq!(root_of_unity::<BigInt>(&rat(1, 2)).unwrap(), -G::one());
        assert_eq!(root_of_unity::<BigInt>(&rat(-3, 1)).unwrap(), G::one());
        assert_eq!(root_of_unity::<BigInt>(&rat(-1, 4)).unwrap(), -G::i());
        assert!(matches!(
            root_of_unity::<BigInt>(&rat(1, 3)),
            Err(Error::DomainPhase(_))
        ));
    }

    #[test]
    fn rebase_one_minus_theta() {
        // e((1-θ)·1/2) = e(1/2)·e(-θ/2)
        let x = P::phase(rat(1, 2));
        let y = x.rebase(&rat(-1, 1), &rat(1, 1)).unwrap();
        assert_eq!(y, P::term(-G::one(), rat(-1, 2)));
        assert!(P::phase(rat(1, 8)).rebase(&rat(-1, 1), &rat(1, 1)).is_err());
    }
}
