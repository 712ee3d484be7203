//! Arithmetic behind the cyclic-projection lemma: with `cM + dN = 1`,
//! `θ' = (cφ + d)/(Nφ − M)` and `t = m + nφ`, the coefficients
//! `K = Mn + Nm`, `L = dn − cm` satisfy `Kθ' + L = t/(Nφ − M)`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    int_serde, poly_identity, rat, rat_serde, tl_sign, ExactInt, Interval, Sign, ThetaLinear,
    ThetaPoly,
};

/// Coefficients and identity outcome for one `(N, M, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Lemma31Identity<I: ExactInt> {
    #[serde(rename = "N", with = "int_serde")]
    pub big_n: I,
    #[serde(rename = "M", with = "int_serde")]
    pub big_m: I,
    #[serde(with = "int_serde")]
    pub c: I,
    #[serde(with = "int_serde")]
    pub d: I,
    #[serde(rename = "K", with = "rat_serde")]
    pub big_k: Ratio<I>,
    #[serde(rename = "L", with = "rat_serde")]
    pub big_l: Ratio<I>,
    pub identity_ok: bool,
}

/// Full record, including the sign conditions over a window of the lemma's base parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Lemma31Record<I: ExactInt> {
    #[serde(flatten)]
    pub identity: Lemma31Identity<I>,
    pub t: ThetaLinear<I>,
    /// `0 < N(Nφ − M) < 1` on the window.
    pub hypothesis_ok: bool,
    /// `0 < t < ¼(Nφ − M)` on the window.
    pub bound_ok: bool,
    /// `τ(h) = N·t`, in the lemma's base parameter.
    pub trace_h: ThetaLinear<I>,
}

/// `c ≡ M⁻¹ (mod N)` with `0 ≤ c < N`, and `d = (1 − cM)/N`.
fn bezout<I: ExactInt>(big_n: &I, big_m: &I) -> (I, I) {
    let ext = big_m.extended_gcd(big_n);
    debug_assert!(ext.gcd.is_one());
    let c = ext.x.mod_floor(big_n);
    let d = (I::one() - c.clone() * big_m.clone()) / big_n.clone();
    (c, d)
}

fn check_pair<I: ExactInt>(big_n: &I, big_m: &I) -> Result<()> {
    if big_n <= &I::zero() || big_m <= &I::zero() {
        return Err(Error::BadInput(format!("N = {big_n} and M = {big_m} must be positive")));
    }
    if !big_n.gcd(big_m).is_one() {
        return Err(Error::NotCoprime(big_n.to_string(), big_m.to_string()));
    }
    Ok(())
}

/// Computes `c, d, K, L` and checks `K(cφ + d) + L(Nφ − M) = t` as polynomials in φ.
pub fn lemma31_identity<I: ExactInt>(
    big_n: &I,
    big_m: &I,
    t: &ThetaLinear<I>,
) -> Result<Lemma31Identity<I>> {
    check_pair(big_n, big_m)?;
    let (c, d) = bezout(big_n, big_m);
    let z = |v: &I| Ratio::from_integer(v.clone());
    let (t_const, t_slope) = (&t.constant, &t.slope);
    let big_k = z(big_m) * t_slope + z(big_n) * t_const;
    let big_l = z(&d) * t_slope - z(&c) * t_const;

    let numerator = ThetaPoly::new(vec![z(&d), z(&c)]);
    let denominator = ThetaPoly::new(vec![-z(big_m), z(big_n)]);
    let lhs = &(&ThetaPoly::constant(big_k.clone()) * &numerator)
        + &(&ThetaPoly::constant(big_l.clone()) * &denominator);
    let identity_ok = poly_identity(&lhs, &t.to_poly());
    Ok(Lemma31Identity {
        big_n: big_n.clone(),
        big_m: big_m.clone(),
        c,
        d,
        big_k,
        big_l,
        identity_ok,
    })
}

fn decide<I: ExactInt>(x: &ThetaLinear<I>, window: &Interval<I>) -> Result<bool> {
    match tl_sign(x, window) {
        Sign::Positive => Ok(true),
        Sign::Negative | Sign::Zero => Ok(false),
        Sign::Indeterminate => Err(Error::IndeterminateSign(x.to_string())),
    }
}

/// Runs the identity and the sign conditions of the lemma over `window`.
/// `t` and `window` are expressed in the lemma's own base parameter.
pub fn lemma31_arithmetic<I: ExactInt>(
    big_n: &I,
    big_m: &I,
    t: &ThetaLinear<I>,
    window: &Interval<I>,
) -> Result<Lemma31Record<I>> {
    lemma31_with(big_n, big_m, t, window, decide)
}

/// As [`lemma31_arithmetic`], but an undecided sign counts as a failed check.
pub(crate) fn lemma31_lenient<I: ExactInt>(
    big_n: &I,
    big_m: &I,
    t: &ThetaLinear<I>,
    window: &Interval<I>,
) -> Result<Lemma31Record<I>> {
    lemma31_with(big_n, big_m, t, window, |x, w| Ok(tl_sign(x, w) == Sign::Positive))
}

fn lemma31_with<I: ExactInt>(
    big_n: &I,
    big_m: &I,
    t: &ThetaLinear<I>,
    window: &Interval<I>,
    positive: impl Fn(&ThetaLinear<I>, &Interval<I>) -> Result<bool>,
) -> Result<Lemma31Record<I>> {
    let identity = lemma31_identity(big_n, big_m, t)?;
    let z = |v: &I| Ratio::from_integer(v.clone());
    // N φ − M
    let gap = ThetaLinear::new(-z(big_m), z(big_n));
    let trace_e = gap.scale(&z(big_n));
    let one = ThetaLinear::new(Ratio::one(), Ratio::zero());
    let hypothesis_ok = positive(&trace_e, window)? && positive(&(&one - &trace_e), window)?;
    let quarter_gap = gap.scale(&rat(1, 4));
    let bound_ok = positive(t, window)? && positive(&(&quarter_gap - t), window)?;
    Ok(Lemma31Record {
        identity,
        t: t.clone(),
        hypothesis_ok,
        bound_ok,
        trace_h: t.scale(&z(big_n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use num_bigint::BigInt;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bezout_normalization() {
        let (c, d) = bezout(&b(3), &b(1));
        assert_eq!((c.clone(), d.clone()), (b(1), b(0)));
        let (c, d) = bezout(&b(7), &b(5));
        assert!(c >= b(0) && c < b(7));
        assert_eq!(c * b(5) + d * b(7), b(1));
        assert_eq!(bezout(&b(1), &b(4)), (b(0), b(1)));
    }

    #[test]
    fn identity_holds() {
        let t = ThetaLinear::new(rat_int(4), rat_int(-9));
        let rec = lemma31_identity(&b(11), &b(4), &t).unwrap();
        assert!(rec.identity_ok);
        assert_eq!(rec.big_k, rat_int(4 * -9 + 11 * 4));
    }

    #[test]
    fn rejects_common_factor() {
        let t = ThetaLinear::zero();
        assert!(matches!(
            lemma31_identity(&b(2), &b(4), &t),
            Err(Error::NotCoprime(_, _))
        ));
    }

    #[test]
    fn indeterminate_window_is_an_error() {
        // Nφ − M = φ − 1 changes sign inside (0, 2)
        let w = Interval::new(rat_int(0), rat_int(2)).unwrap();
        let t = ThetaLinear::new(rat(1, 10), rat_int(0));
        assert!(matches!(
            lemma31_arithmetic(&b(1), &b(1), &t, &w),
            Err(Error::IndeterminateSign(_))
        ));
    }
}
