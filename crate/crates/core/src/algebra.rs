//! Laurent polynomials in the rotation algebra generators `U`, `V`.
//!
//! Elements are kept in normal form `Σ c_{mn} U^m V^n` (U-powers first). The
//! reordering rule is `V^b U^c = e(ϑ)^{bc} U^c V^b`, with ϑ the element's own
//! parameter symbol. Phases stay in that symbol until [`nu`] or [`zeta`] moves
//! an element into the base algebra `A_θ`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_serde, ExactInt, PhaseScalar};

/// Parameter `λθ + μ` of an algebra `A_{λθ+μ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Param<I: ExactInt> {
    #[serde(with = "rat_serde")]
    lam: Ratio<I>,
    #[serde(with = "rat_serde")]
    mu: Ratio<I>,
}

impl<I: ExactInt> Param<I> {
    pub fn new(lam: Ratio<I>, mu: Ratio<I>) -> Result<Self> {
        if lam.is_zero() {
            return Err(Error::BadInput("parameter slope must be nonzero".into()));
        }
        Ok(Self { lam, mu })
    }

    pub fn theta() -> Self {
        Self { lam: rat_int(1), mu: rat_int(0) }
    }

    /// `1 − θ`.
    pub fn one_minus_theta() -> Self {
        Self { lam: rat_int(-1), mu: rat_int(1) }
    }

    /// `n²θ − k`, the domain parameter of `ζ_{n,θ}`.
    pub fn scaled(n: i64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("ζ requires n ≠ 0".into()));
        }
        Ok(Self { lam: rat_int(n * n), mu: rat_int(-k) })
    }

    pub fn lam(&self) -> &Ratio<I> {
        &self.lam
    }

    pub fn mu(&self) -> &Ratio<I> {
        &self.mu
    }

    /// Re-expresses a scalar written in this parameter's symbol in terms of θ.
    pub fn to_base(&self, x: &PhaseScalar<I>) -> Result<PhaseScalar<I>> {
        x.rebase(&self.lam, &self.mu)
    }

    fn expect(&self, other: &Param<I>) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl<I: ExactInt> fmt::Display for Param<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lam.is_one(), self.mu.is_zero()) {
            (true, true) => write!(f, "θ"),
            (_, true) => write!(f, "{}θ", self.lam),
            _ => write!(f, "{}θ + {}", self.lam, self.mu),
        }
    }
}

/// A monomial exponent `(m, n)` standing for `U^m V^n`.
pub type Exponent = (i64, i64);

/// A finite element `Σ c_{mn} U^m V^n` of `A_{λθ+μ}` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCElement<I: ExactInt> {
    param: Param<I>,
    terms: BTreeMap<Exponent, PhaseScalar<I>>,
}

impl<I: ExactInt> NCElement<I> {
    pub fn zero(param: Param<I>) -> Self {
        Self { param, terms: BTreeMap::new() }
    }

    pub fn one(param: Param<I>) -> Self {
        Self::monomial(param, PhaseScalar::one(), 0, 0)
    }

    pub fn monomial(param: Param<I>, c: PhaseScalar<I>, m: i64, n: i64) -> Self {
        let mut x = Self::zero(param);
        x.accumulate((m, n), c);
        x
    }

    pub fn u(param: Param<I>) -> Self {
        Self::monomial(param, PhaseScalar::one(), 1, 0)
    }

    pub fn v(param: Param<I>) -> Self {
        Self::monomial(param, PhaseScalar::one(), 0, 1)
    }

    pub fn scalar(param: Param<I>, c: PhaseScalar<I>) -> Self {
        Self::monomial(param, c, 0, 0)
    }

    pub fn param(&self) -> &Param<I> {
        &self.param
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &PhaseScalar<I>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> PhaseScalar<I> {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(PhaseScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: Exponent, c: PhaseScalar<I>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn map_terms<F>(&self, param: Param<I>, mut f: F) -> Result<Self>
    where
        F: FnMut(Exponent, &PhaseScalar<I>) -> Result<(Exponent, PhaseScalar<I>)>,
    {
        let mut out = Self::zero(param);
        for (&key, c) in &self.terms {
            let (key, c) = f(key, c)?;
            out.accumulate(key, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.param.expect(&other.param)?;
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.accumulate(key, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            param: self.param.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PhaseScalar<I>) -> Self {
        self.map_terms(self.param.clone(), |key, x| Ok((key, x * c)))
            .expect("scaling is total")
    }

    /// Product via `(U^a V^b)(U^c V^d) = e(ϑ)^{bc} U^{a+c} V^{b+d}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.param.expect(&other.param)?;
        let mut out = Self::zero(self.param.clone());
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let coeff = &(x * y) * &PhaseScalar::phase_pow(b * c);
                out.accumulate((a + c, b + d), coeff);
            }
        }
        Ok(out)
    }

    /// The involution: `(c U^m V^n)* = conj(c) e(ϑ)^{mn} U^{-m} V^{-n}`.
    pub fn star(&self) -> Self {
        self.map_terms(self.param.clone(), |(m, n), c| {
            Ok(((-m, -n), &c.conj() * &PhaseScalar::phase_pow(m * n)))
        })
        .expect("star is total")
    }

    /// The Fourier transform `σ(U) = V⁻¹`, `σ(V) = U`:
    /// `U^m V^n ↦ e(ϑ)^{-mn} U^n V^{-m}`.
    pub fn sigma(&self) -> Self {
        self.map_terms(self.param.clone(), |(m, n), c| {
            Ok(((n, -m), c * &PhaseScalar::phase_pow(-m * n)))
        })
        .expect("sigma is total")
    }

    pub fn sigma_pow(&self, power: u32) -> Self {
        (0..power % 4).fold(self.clone(), |x, _| x.sigma())
    }

    /// The parity automorphism `γ(U) = −U`, `γ(V) = −V`.
    pub fn gamma(&self) -> Self {
        self.map_terms(self.param.clone(), |(m, n), c| {
            Ok(((m, n), if (m + n) % 2 == 0 { c.clone() } else { -c }))
        })
        .expect("gamma is total")
    }

    /// `ν: A_{1−θ} → A_θ`, `ν(U) = V`, `ν(V) = U`.
    pub fn nu(&self) -> Result<Self> {
        Param::one_minus_theta().expect(&self.param)?;
        let param = self.param.clone();
        self.map_terms(Param::theta(), |(m, n), c| {
            let c = param.to_base(c)?;
            Ok(((n, m), &c * &PhaseScalar::phase_pow(m * n)))
        })
    }

    /// `ζ_{n,θ}: A_{n²θ−k} → A_θ`, `U ↦ U^n`, `V ↦ V^n`.
    pub fn zeta(&self, n: i64, k: i64) -> Result<Self> {
        Param::scaled(n, k)?.expect(&self.param)?;
        let param = self.param.clone();
        self.map_terms(Param::theta(), |(a, b), c| Ok(((n * a, n * b), param.to_base(c)?)))
    }

    /// Moves the element to another parameter without touching coefficients.
    pub fn with_param(&self, param: Param<I>) -> Self {
        Self { param, terms: self.terms.clone() }
    }
}

/// All monomials `U^a V^b` with `|a|, |b| ≤ window`.
pub fn monomial_window<I: ExactInt>(param: &Param<I>, window: i64) -> Vec<NCElement<I>> {
    let mut out = Vec::new();
    for a in -window..=window {
        for b in -window..=window {
            out.push(NCElement::monomial(param.clone(), PhaseScalar::one(), a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_bigint::BigInt;

    type E = NCElement<BigInt>;
    type P = PhaseScalar<BigInt>;
    type G = crate::exact::GaussRat<BigInt>;

    fn th() -> Param<BigInt> {
        Param::theta()
    }

    fn mono(c: P, m: i64, n: i64) -> E {
        E::monomial(th(), c, m, n)
    }

    #[test]
    fn heisenberg_relation() {
        let vu = E::v(th()).mul(&E::u(th())).unwrap();
        assert_eq!(vu, mono(P::phase_pow(1), 1, 1));
    }

    #[test]
    fn inverse_and_squares() {
        let u_inv = mono(P::one(), -1, 0);
        assert_eq!(E::u(th()).mul(&u_inv).unwrap(), E::one(th()));
        let uv = mono(P::one(), 1, 1);
        assert_eq!(uv.mul(&uv).unwrap(), mono(P::phase_pow(1), 2, 2));
    }

    #[test]
    fn constructor() {
        let x = mono(P::constant(G::half_one_minus_i()), 2, -1);
        assert_eq!(x.coeff(2, -1), P::constant(G::half_one_minus_i()));
        assert_eq!(x.len(), 1);
        assert!(mono(P::zero(), 3, 3).is_zero());
    }

    #[test]
    fn star_examples() {
        assert_eq!(E::u(th()).star(), mono(P::one(), -1, 0));
        let uv = mono(P::one(), 1, 1);
        assert_eq!(uv.star(), mono(P::phase_pow(1), -1, -1));
        // agrees with V^{-1} U^{-1}
        let direct = mono(P::one(), 0, -1).mul(&mono(P::one(), -1, 0)).unwrap();
        assert_eq!(uv.star(), direct);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(E::u(th()).sigma(), mono(P::one(), 0, -1));
        assert_eq!(E::v(th()).sigma(), E::u(th()));
        let uv = mono(P::one(), 1, 1);
        assert_eq!(uv.sigma(), mono(P::phase_pow(-1), 1, -1));
        assert_eq!(uv.sigma_pow(4), uv);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(E::u(th()).gamma(), E::u(th()).neg());
        let x = mono(P::one(), 2, 2);
        assert_eq!(x.gamma(), x);
    }

    #[test]
    fn nu_examples() {
        let p = Param::one_minus_theta();
        assert_eq!(E::u(p.clone()).nu().unwrap(), E::v(th()));
        assert_eq!(E::one(p.clone()).nu().unwrap(), E::one(th()));
        let uv = E::monomial(p.clone(), P::one(), 1, 1);
        assert_eq!(uv.nu().unwrap(), mono(P::phase_pow(1), 1, 1));
        assert!(matches!(E::u(th()).nu(), Err(Error::ParamMismatch { .. })));
        let bad = E::monomial(p, P::phase(rat(1, 3)), 0, 0);
        assert!(matches!(bad.nu(), Err(Error::DomainPhase(_))));
    }

    #[test]
    fn zeta_examples() {
        let p = Param::scaled(2, 1).unwrap();
        assert_eq!(E::u(p.clone()).zeta(2, 1).unwrap(), mono(P::one(), 2, 0));
        let uv = E::monomial(p.clone(), P::one(), 1, 1);
        assert_eq!(uv.zeta(2, 1).unwrap(), mono(P::one(), 2, 2));
        // the relation phase e(4θ−1) becomes e(θ)^4
        let rel = E::v(p.clone()).mul(&E::u(p)).unwrap();
        assert_eq!(rel.zeta(2, 1).unwrap(), mono(P::phase_pow(4), 2, 2));
        assert!(E::u(th()).zeta(2, 1).is_err());
    }

    #[test]
    fn zero_element_is_handled() {
        let z = E::zero(th());
        assert!(z.mul(&E::u(th())).unwrap().is_zero());
        assert!(z.star().is_zero());
        assert!(z.sigma().is_zero());
        assert!(z.with_param(Param::one_minus_theta()).nu().unwrap().is_zero());
    }
}
