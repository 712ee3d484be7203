//! The canonical trace τ and the unbounded trace functionals ψ₁₀, ψ₁₁, ψ₂₀, ψ₂₁, ψ₂₂.
//!
//! On a monomial `U^m V^n` of `A_ϑ`, with `δ(b) = 1` iff `2 | b`:
//!
//! | functional | phase               | delta pattern        |
//! |------------|---------------------|----------------------|
//! | ψ₁₀        | `e(−ϑ(m+n)²/4)`     | `δ(m−n)`             |
//! | ψ₁₁        | `e(−ϑ(m+n)²/4)`     | `δ(m−n−1)`           |
//! | ψ₂₀        | `e(−ϑmn/2)`         | `δ(m)δ(n)`           |
//! | ψ₂₁        | `e(−ϑmn/2)`         | `δ(m−1)δ(n−1)`       |
//! | ψ₂₂        | `e(−ϑmn/2)`         | `δ(m−n−1)`           |
//!
//! Values are returned in the element's own parameter symbol.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_window, NCElement, Param};
use crate::error::{Error, Result};
use crate::exact::{rat, ExactInt, GaussRat, PhaseScalar};

/// Default half-width of the exhaustive monomial windows. Every delta pattern
/// is 2-periodic, so small windows already reach all parity cases.
pub const DEFAULT_WINDOW: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    T10,
    T11,
    T20,
    T21,
    T22,
    Tau,
}

impl TraceKind {
    pub const UNBOUNDED: [TraceKind; 5] = [
        TraceKind::T10,
        TraceKind::T11,
        TraceKind::T20,
        TraceKind::T21,
        TraceKind::T22,
    ];

    pub const ALL: [TraceKind; 6] = [
        TraceKind::T10,
        TraceKind::T11,
        TraceKind::T20,
        TraceKind::T21,
        TraceKind::T22,
        TraceKind::Tau,
    ];

    /// The automorphism power for which ψ is an α-trace: σ for ψ₁ⱼ, σ² for ψ₂ⱼ.
    pub fn trace_power(self) -> Option<u32> {
        match self {
            TraceKind::T10 | TraceKind::T11 => Some(1),
            TraceKind::T20 | TraceKind::T21 | TraceKind::T22 => Some(2),
            TraceKind::Tau => None,
        }
    }

    /// Whether the parity automorphism flips the sign of this functional.
    pub fn parity_odd(self) -> bool {
        matches!(self, TraceKind::T11 | TraceKind::T22)
    }
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TraceKind::T10 => "t10",
            TraceKind::T11 => "t11",
            TraceKind::T20 => "t20",
            TraceKind::T21 => "t21",
            TraceKind::T22 => "t22",
            TraceKind::Tau => "tau",
        };
        f.write_str(s)
    }
}

impl FromStr for TraceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "t10" => TraceKind::T10,
            "t11" => TraceKind::T11,
            "t20" => TraceKind::T20,
            "t21" => TraceKind::T21,
            "t22" => TraceKind::T22,
            "tau" => TraceKind::Tau,
            other => return Err(Error::BadInput(format!("unknown trace kind {other:?}"))),
        })
    }
}

fn even(b: i64) -> bool {
    b.rem_euclid(2) == 0
}

/// ψ on the monomial `U^m V^n` (unit coefficient).
pub fn psi_monomial<I: ExactInt>(kind: TraceKind, m: i64, n: i64) -> PhaseScalar<I> {
    let quarter = || PhaseScalar::phase(rat(-(m + n) * (m + n), 4));
    let half = || PhaseScalar::phase(rat(-m * n, 2));
    let on = |cond: bool, value: PhaseScalar<I>| if cond { value } else { PhaseScalar::zero() };
    match kind {
        TraceKind::T10 => on(even(m - n), quarter()),
        TraceKind::T11 => on(even(m - n - 1), quarter()),
        TraceKind::T20 => on(even(m) && even(n), half()),
        TraceKind::T21 => on(even(m - 1) && even(n - 1), half()),
        TraceKind::T22 => on(even(m - n - 1), half()),
        TraceKind::Tau => on(m == 0 && n == 0, PhaseScalar::one()),
    }
}

/// Linear extension of [`psi_monomial`].
pub fn psi<I: ExactInt>(kind: TraceKind, x: &NCElement<I>) -> PhaseScalar<I> {
    x.terms().fold(PhaseScalar::zero(), |acc, (&(m, n), c)| {
        &acc + &(c * &psi_monomial(kind, m, n))
    })
}

/// The Hermitian adjoint `ψ*(x) = conj(ψ(x*))`.
pub fn psi_star<I: ExactInt>(kind: TraceKind, x: &NCElement<I>) -> PhaseScalar<I> {
    psi(kind, &x.star()).conj()
}

/// ψ with the value re-expressed in the base symbol θ.
pub fn psi_base<I: ExactInt>(kind: TraceKind, x: &NCElement<I>) -> Result<PhaseScalar<I>> {
    x.param().to_base(&psi(kind, x))
}

/// First pair of window monomials `(x, y)` with `ψ(xy) ≠ ψ(σ^power(y) x)`.
pub fn alpha_trace_violation<I: ExactInt>(
    kind: TraceKind,
    power: u32,
    window: i64,
) -> Option<(NCElement<I>, NCElement<I>)> {
    let param = Param::theta();
    let mons = monomial_window::<I>(&param, window);
    mons.par_iter()
        .find_map_first(|x| {
            mons.iter().find_map(|y| {
                let lhs = psi(kind, &x.mul(y).ok()?);
                let rhs = psi(kind, &y.sigma_pow(power).mul(x).ok()?);
                (lhs != rhs).then(|| (x.clone(), y.clone()))
            })
        })
}

/// `ψ(xy) = ψ(σ^power(y)·x)` for all monomial pairs in the window.
pub fn check_alpha_trace<I: ExactInt>(kind: TraceKind, power: u32, window: i64) -> bool {
    alpha_trace_violation::<I>(kind, power, window).is_none()
}

/// `ψ(σ(x)) = ψ(x)` on the window.
pub fn check_sigma_invariance<I: ExactInt>(kind: TraceKind, window: i64) -> bool {
    monomial_window::<I>(&Param::theta(), window)
        .par_iter()
        .all(|x| psi(kind, &x.sigma()) == psi(kind, x))
}

/// ψ₁₁ and ψ₂₂ change sign under γ; ψ₁₀, ψ₂₀, ψ₂₁ are unchanged.
pub fn check_parity_flip<I: ExactInt>(window: i64) -> bool {
    monomial_window::<I>(&Param::theta(), window)
        .par_iter()
        .all(|x| {
            let gx = x.gamma();
            TraceKind::UNBOUNDED.iter().all(|&kind| {
                let expected = if kind.parity_odd() {
                    -psi(kind, x)
                } else {
                    psi(kind, x)
                };
                psi(kind, &gx) == expected
            })
        })
}

/// The right-hand side of the ν-relations `ψ^θ ∘ ν = …` applied to `x ∈ A_{1−θ}`,
/// in base θ:
/// ψ₁₀ ↦ (ψ₁₀)*, ψ₁₁ ↦ −i(ψ₁₁)*, ψ₂₀ ↦ ψ₂₀, ψ₂₁ ↦ −ψ₂₁, ψ₂₂ ↦ ψ₂₂.
pub fn nu_relation_rhs<I: ExactInt>(kind: TraceKind, x: &NCElement<I>) -> Result<PhaseScalar<I>> {
    let param = x.param();
    let value = match kind {
        TraceKind::T10 => psi_star(kind, x),
        TraceKind::T11 => psi_star(kind, x).scale(&-GaussRat::i()),
        TraceKind::T21 => -psi(kind, x),
        TraceKind::T20 | TraceKind::T22 | TraceKind::Tau => psi(kind, x),
    };
    param.to_base(&value)
}

/// Checks all five ν-relations on the monomials of `A_{1−θ}` in the window.
pub fn check_nu_relations<I: ExactInt>(window: i64) -> Result<bool> {
    let mons = monomial_window::<I>(&Param::one_minus_theta(), window);
    let results: Result<Vec<bool>> = mons
        .par_iter()
        .map(|x| {
            let image = x.nu()?;
            for kind in TraceKind::UNBOUNDED {
                if psi(kind, &image) != nu_relation_rhs(kind, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    Ok(results?.into_iter().all(|ok| ok))
}

/// Outcome of the exhaustive trace-law suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub window: i64,
    pub alpha_trace: Vec<(TraceKind, u32, bool)>,
    pub sigma_invariance: Vec<(TraceKind, bool)>,
    pub parity_flip: bool,
    pub nu_relations: bool,
}

impl TraceReport {
    pub fn all_pass(&self) -> bool {
        self.alpha_trace.iter().all(|r| r.2)
            && self.sigma_invariance.iter().all(|r| r.1)
            && self.parity_flip
            && self.nu_relations
    }
}

/// Runs every trace law over the window.
pub fn check_all<I: ExactInt>(window: i64) -> Result<TraceReport> {
    let alpha_trace = TraceKind::UNBOUNDED
        .iter()
        .map(|&k| {
            let power = k.trace_power().expect("unbounded kinds have a power");
            (k, power, check_alpha_trace::<I>(k, power, window))
        })
        .collect();
    let sigma_invariance = TraceKind::ALL
        .iter()
        .map(|&k| (k, check_sigma_invariance::<I>(k, window)))
        .collect();
    Ok(TraceReport {
        window,
        alpha_trace,
        sigma_invariance,
        parity_flip: check_parity_flip::<I>(window),
        nu_relations: check_nu_relations::<I>(window)?,
    })
}

/// ψ(1) for each functional, as Gaussian rationals.
pub fn values_at_one<I: ExactInt>() -> Vec<(TraceKind, GaussRat<I>)> {
    TraceKind::ALL
        .iter()
        .map(|&k| {
            let v = psi_monomial::<I>(k, 0, 0)
                .as_constant()
                .unwrap_or_else(GaussRat::zero);
            (k, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type E = NCElement<BigInt>;
    type P = PhaseScalar<BigInt>;

    fn th() -> Param<BigInt> {
        Param::theta()
    }

    #[test]
    fn values_on_identity() {
        let one = E::one(th());
        assert_eq!(psi(TraceKind::T10, &one), P::one());
        assert_eq!(psi(TraceKind::T11, &one), P::zero());
        assert_eq!(psi(TraceKind::T20, &one), P::one());
        assert_eq!(psi(TraceKind::T21, &one), P::zero());
        assert_eq!(psi(TraceKind::T22, &one), P::zero());
        assert_eq!(psi(TraceKind::Tau, &one), P::one());
    }

    #[test]
    fn table_spot_values() {
        let uv = E::monomial(th(), P::one(), 1, 1);
        assert_eq!(psi(TraceKind::T10, &uv), P::phase_pow(-1));
        assert_eq!(psi(TraceKind::T22, &E::u(th())), P::one());
        for (m, n) in [(1, 0), (0, -3), (2, 2)] {
            assert!(psi(TraceKind::Tau, &E::monomial(th(), P::one(), m, n)).is_zero());
        }
    }

    #[test]
    fn adjoint_functional() {
        assert_eq!(psi_star(TraceKind::T10, &E::one(th())), P::one());
        let u = E::u(th());
        let u_inv = E::monomial(th(), P::one(), -1, 0);
        assert_eq!(psi_star(TraceKind::T10, &u), psi(TraceKind::T10, &u_inv).conj());
        let uv = E::monomial(th(), P::one(), 1, 1);
        let twisted = E::monomial(th(), P::phase_pow(1), -1, -1);
        assert_eq!(psi_star(TraceKind::T11, &uv), psi(TraceKind::T11, &twisted).conj());
    }

    #[test]
    fn trace_laws_small_window() {
        assert!(check_alpha_trace::<i64>(TraceKind::T10, 1, 3));
        assert!(check_alpha_trace::<i64>(TraceKind::T20, 2, 3));
        assert!(check_sigma_invariance::<i64>(TraceKind::T11, 3));
        assert!(check_sigma_invariance::<i64>(TraceKind::Tau, 3));
    }

    #[test]
    fn psi10_is_not_a_sigma_squared_trace() {
        let (x, y) = alpha_trace_violation::<BigInt>(TraceKind::T10, 2, 3)
            .expect("a violating pair exists");
        let lhs = psi(TraceKind::T10, &x.mul(&y).unwrap());
        let rhs = psi(TraceKind::T10, &y.sigma_pow(2).mul(&x).unwrap());
        assert_ne!(lhs, rhs);
        assert!(!check_alpha_trace::<BigInt>(TraceKind::T10, 2, 3));
    }

    #[test]
    fn parity_examples() {
        let uv2 = E::monomial(th(), P::one(), 1, 2);
        assert_eq!(psi(TraceKind::T11, &uv2.gamma()), -psi(TraceKind::T11, &uv2));
        let u2v2 = E::monomial(th(), P::one(), 2, 2);
        assert_eq!(psi(TraceKind::T20, &u2v2.gamma()), psi(TraceKind::T20, &u2v2));
        assert!(check_parity_flip::<i64>(3));
    }

    #[test]
    fn nu_relations_small_window() {
        assert!(check_nu_relations::<BigInt>(3).unwrap());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in TraceKind::ALL {
            assert_eq!(k.to_string().parse::<TraceKind>().unwrap(), k);
        }
        assert!("t12".parse::<TraceKind>().is_err());
    }
}
