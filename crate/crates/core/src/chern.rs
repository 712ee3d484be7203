//! Connes-Chern vectors `(τ; ψ₁₀, ψ₁₁; ψ₂₀, ψ₂₁, ψ₂₂)` of the canonical projections,
//! the ζ/ν transfer rules relating invariants across parameters, and the
//! parity action on invariants.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_window, NCElement, Param};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, rat_serde, ExactInt, GaussRat, PhaseScalar, ThetaLinear};
use crate::traces::{psi, TraceKind};

/// The five discrete invariants of a projection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TopVector<I: ExactInt> {
    pub p10: GaussRat<I>,
    pub p11: GaussRat<I>,
    #[serde(with = "rat_serde")]
    pub p20: Ratio<I>,
    #[serde(with = "rat_serde")]
    pub p21: Ratio<I>,
    #[serde(with = "rat_serde")]
    pub p22: Ratio<I>,
}

impl<I: ExactInt> TopVector<I> {
    pub fn zero() -> Self {
        Self {
            p10: GaussRat::zero(),
            p11: GaussRat::zero(),
            p20: Ratio::zero(),
            p21: Ratio::zero(),
            p22: Ratio::zero(),
        }
    }

    /// Quantization: ψ₁₀, ψ₁₁ in `ℤ + ℤ(1−i)/2`, ψ₂₀, ψ₂₁ in `½ℤ`, ψ₂₂ in `ℤ`.
    pub fn in_lattice(&self) -> bool {
        let two = rat_int::<I>(2);
        self.p10.in_half_lattice()
            && self.p11.in_half_lattice()
            && (&self.p20 * &two).is_integer()
            && (&self.p21 * &two).is_integer()
            && self.p22.is_integer()
    }

    fn to_array(&self) -> [GaussRat<I>; 5] {
        [
            self.p10.clone(),
            self.p11.clone(),
            GaussRat::real(self.p20.clone()),
            GaussRat::real(self.p21.clone()),
            GaussRat::real(self.p22.clone()),
        ]
    }

    fn from_array(a: [GaussRat<I>; 5]) -> Self {
        let [p10, p11, p20, p21, p22] = a;
        debug_assert!(p20.is_real() && p21.is_real() && p22.is_real());
        Self { p10, p11, p20: p20.re, p21: p21.re, p22: p22.re }
    }
}

impl<I: ExactInt> Add for &TopVector<I> {
    type Output = TopVector<I>;
    fn add(self, rhs: Self) -> TopVector<I> {
        TopVector {
            p10: &self.p10 + &rhs.p10,
            p11: &self.p11 + &rhs.p11,
            p20: &self.p20 + &rhs.p20,
            p21: &self.p21 + &rhs.p21,
            p22: &self.p22 + &rhs.p22,
        }
    }
}

impl<I: ExactInt> Neg for &TopVector<I> {
    type Output = TopVector<I>;
    fn neg(self) -> TopVector<I> {
        TopVector {
            p10: -&self.p10,
            p11: -&self.p11,
            p20: -self.p20.clone(),
            p21: -self.p21.clone(),
            p22: -self.p22.clone(),
        }
    }
}

impl<I: ExactInt> Sub for &TopVector<I> {
    type Output = TopVector<I>;
    fn sub(self, rhs: Self) -> TopVector<I> {
        self + &(-rhs)
    }
}

impl<I: ExactInt> fmt::Display for TopVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {}, {}, {})",
            self.p10, self.p11, self.p20, self.p21, self.p22
        )
    }
}

/// Trace plus topological invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ChernVector<I: ExactInt> {
    pub trace: ThetaLinear<I>,
    pub top: TopVector<I>,
}

impl<I: ExactInt> ChernVector<I> {
    pub fn new(trace: ThetaLinear<I>, top: TopVector<I>) -> Self {
        Self { trace, top }
    }

    pub fn zero() -> Self {
        Self::new(ThetaLinear::zero(), TopVector::zero())
    }
}

impl<I: ExactInt> Add for &ChernVector<I> {
    type Output = ChernVector<I>;
    fn add(self, rhs: Self) -> ChernVector<I> {
        ChernVector::new(&self.trace + &rhs.trace, &self.top + &rhs.top)
    }
}

impl<I: ExactInt> Sub for &ChernVector<I> {
    type Output = ChernVector<I>;
    fn sub(self, rhs: Self) -> ChernVector<I> {
        ChernVector::new(&self.trace - &rhs.trace, &self.top - &rhs.top)
    }
}

impl<I: ExactInt> fmt::Display for ChernVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ = {}; Top = {}", self.trace, self.top)
    }
}

/// Label of a canonical projection: `e⁺` has trace `q²θ − pq`, `e⁻` has `ab − b²θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Charge {
    Plus,
    Minus,
}

impl FromStr for Charge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Charge::Plus),
            "minus" | "-" => Ok(Charge::Minus),
            other => Err(Error::BadInput(format!("unknown charge {other:?}"))),
        }
    }
}

/// `T(1) = (1; 1, 0; 1, 0, 0)`.
pub fn chern_one<I: ExactInt>() -> ChernVector<I> {
    ChernVector::new(
        ThetaLinear::new(rat_int(1), rat_int(0)),
        TopVector {
            p10: GaussRat::one(),
            p11: GaussRat::zero(),
            p20: rat_int(1),
            p21: rat_int(0),
            p22: rat_int(0),
        },
    )
}

/// Invariants of the projection field `𝓔(t)`: `((1−i)/2, (1−i)/2; ½, ½, 1)`.
pub fn top_e_field<I: ExactInt>() -> TopVector<I> {
    TopVector {
        p10: GaussRat::half_one_minus_i(),
        p11: GaussRat::half_one_minus_i(),
        p20: rat(1, 2),
        p21: rat(1, 2),
        p22: rat_int(1),
    }
}

/// Chern vector of `𝓔(t)`. The trace is the formal symbol `t`, written as the
/// θ-linear form `0 + 1·t` in an auxiliary parameter; use [`top_e_at`] to specialize.
pub fn top_e<I: ExactInt>() -> ChernVector<I> {
    top_e_at(ThetaLinear::new(rat_int(0), rat_int(1)))
}

pub fn top_e_at<I: ExactInt>(t: ThetaLinear<I>) -> ChernVector<I> {
    ChernVector::new(t, top_e_field())
}

/// Invariants of the flat projection `g + σ(g) + σ²(g) + σ³(g)`.
pub fn top_flat<I: ExactInt>() -> TopVector<I> {
    TopVector::zero()
}

/// `Top(γ(x))`: flips ψ₁₁ and ψ₂₂, keeps the trace.
pub fn gamma_top<I: ExactInt>(v: &ChernVector<I>) -> ChernVector<I> {
    let mut out = v.clone();
    out.top.p11 = -&v.top.p11;
    out.top.p22 = -v.top.p22.clone();
    out
}

fn check_coprime<I: ExactInt>(a: &I, b: &I) -> Result<()> {
    if b < &I::one() {
        return Err(Error::BadInput(format!("denominator {b} must be ≥ 1")));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::BadInput(format!("{a} and {b} are not coprime")));
    }
    Ok(())
}

fn residue<I: ExactInt>(x: &I, modulus: i64) -> i64 {
    x.mod_floor(&I::from_i64(modulus).expect("small modulus"))
        .to_i64()
        .expect("residue fits")
}

fn delta2<I: ExactInt>(x: &I) -> bool {
    residue(x, 2) == 0
}

fn sign_pow<I: ExactInt>(x: &I) -> Ratio<I> {
    if delta2(x) {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

fn indicator<I: ExactInt>(cond: bool) -> Ratio<I> {
    rat_int(i64::from(cond))
}

/// Closed form for `e_q⁺ = ζ_{q,θ} 𝓔(q²θ − pq)`.
pub fn top_eq_plus<I: ExactInt>(p: &I, q: &I) -> Result<ChernVector<I>> {
    check_coprime(p, q)?;
    let q_even = delta2(q);
    let q_odd = !q_even;
    let pq = p.clone() * q.clone();
    let half = GaussRat::half_one_minus_i();
    let p10 = if q_even {
        let half_q = q.clone() / I::from_i64(2).expect("2");
        half.scale(&(rat_int::<I>(1) + sign_pow(&half_q)))
    } else {
        half.clone()
    };
    let p11 = if q_odd {
        &half * &GaussRat::i_pow(-residue(&pq, 4))
    } else {
        GaussRat::zero()
    };
    let top = TopVector {
        p10,
        p11,
        p20: rat::<I>(1, 2) + rat::<I>(3, 2) * indicator(q_even),
        p21: rat::<I>(1, 2) * sign_pow(p) * indicator(q_odd),
        p22: indicator(q_odd),
    };
    let trace = ThetaLinear::new(Ratio::from_integer(-pq), Ratio::from_integer(q.clone() * q.clone()));
    Ok(ChernVector::new(trace, top))
}

/// Closed form for `e_b⁻ = ν ζ_{b,1−θ} 𝓔(ab − b²θ)`.
pub fn top_eb_minus<I: ExactInt>(a: &I, b: &I) -> Result<ChernVector<I>> {
    check_coprime(a, b)?;
    let b_even = delta2(b);
    let b_odd = !b_even;
    let ab = a.clone() * b.clone();
    let half = GaussRat::half_one_plus_i();
    let p10 = if b_even {
        let half_b = b.clone() / I::from_i64(2).expect("2");
        half.scale(&(rat_int::<I>(1) + sign_pow(&half_b)))
    } else {
        half.clone()
    };
    let p11 = if b_odd {
        &half * &GaussRat::i_pow(-residue(&ab, 4))
    } else {
        GaussRat::zero()
    };
    let top = TopVector {
        p10,
        p11,
        p20: rat::<I>(1, 2) + rat::<I>(3, 2) * indicator(b_even),
        p21: rat::<I>(1, 2) * sign_pow(a) * indicator(b_odd),
        p22: indicator(b_odd),
    };
    let trace = ThetaLinear::new(Ratio::from_integer(ab), Ratio::from_integer(-(b.clone() * b.clone())));
    Ok(ChernVector::new(trace, top))
}

/// Coefficients of the ζ transfer rules for `ζ_{n,θ}: A_{n²θ−k} → A_θ`:
///
/// ```text
/// ψ₁₀ζ = ψ₁₀ + i^{−k} δ(n) ψ₁₁        ψ₂₀ζ = ψ₂₀ + (−1)^k δ(n) ψ₂₁ + δ(n) ψ₂₂
/// ψ₁₁ζ = i^{−k} δ(n−1) ψ₁₁            ψ₂₁ζ = (−1)^k δ(n−1) ψ₂₁
///                                     ψ₂₂ζ = δ(n−1) ψ₂₂
/// ```
#[derive(Clone, Debug)]
pub struct ZetaTransfer<I: ExactInt> {
    i_pow: GaussRat<I>,
    sign: GaussRat<I>,
    n_even: bool,
}

/// Values that the transfer rules can act on.
pub trait TransferValue<I: ExactInt>: Clone {
    fn zero_value() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, c: &GaussRat<I>) -> Self;
}

impl<I: ExactInt> TransferValue<I> for GaussRat<I> {
    fn zero_value() -> Self {
        GaussRat::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, c: &GaussRat<I>) -> Self {
        self * c
    }
}

impl<I: ExactInt> TransferValue<I> for PhaseScalar<I> {
    fn zero_value() -> Self {
        PhaseScalar::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, c: &GaussRat<I>) -> Self {
        self.scale(c)
    }
}

impl<I: ExactInt> ZetaTransfer<I> {
    pub fn new(n: &I, k: &I) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::BadInput("ζ requires n ≠ 0".into()));
        }
        Ok(Self {
            i_pow: GaussRat::i_pow(-residue(k, 4)),
            sign: GaussRat::real(sign_pow(k)),
            n_even: delta2(n),
        })
    }

    /// Maps `(ψ₁₀, …, ψ₂₂)` on `A_{n²θ−k}` to the values of `ψ^θ ∘ ζ`.
    pub fn apply<S: TransferValue<I>>(&self, a: &[S; 5]) -> [S; 5] {
        let even = |v: &S| if self.n_even { v.clone() } else { S::zero_value() };
        let odd = |v: &S| if self.n_even { S::zero_value() } else { v.clone() };
        [
            a[0].plus(&even(&a[1].times(&self.i_pow))),
            odd(&a[1].times(&self.i_pow)),
            a[2].plus(&even(&a[3].times(&self.sign))).plus(&even(&a[4])),
            odd(&a[3].times(&self.sign)),
            odd(&a[4]),
        ]
    }

    pub fn apply_top(&self, top: &TopVector<I>) -> TopVector<I> {
        TopVector::from_array(self.apply(&top.to_array()))
    }
}

/// ν-relations on the invariants of a self-adjoint element of `A_{1−θ}`, where
/// `ψ*(x) = conj(ψ(x))`: `(conj ψ₁₀, −i·conj ψ₁₁; ψ₂₀, −ψ₂₁, ψ₂₂)`.
pub fn nu_transfer_top<I: ExactInt>(top: &TopVector<I>) -> TopVector<I> {
    TopVector {
        p10: top.p10.conj(),
        p11: &(-GaussRat::i()) * &top.p11.conj(),
        p20: top.p20.clone(),
        p21: -top.p21.clone(),
        p22: top.p22.clone(),
    }
}

fn psi_values<I: ExactInt>(x: &NCElement<I>) -> [PhaseScalar<I>; 5] {
    TraceKind::UNBOUNDED.map(|kind| psi(kind, x))
}

/// Checks all five ζ transfer equations on every monomial `U^a V^b`, `|a|, |b| ≤ window`,
/// of `A_{n²θ−k}`, comparing `ψ^θ(ζ(x))` with the transfer of `ψ^{θ_n}(x)`.
pub fn verify_lemma_psizeta<I: ExactInt>(n: i64, k: i64, window: i64) -> Result<bool> {
    let param = Param::<I>::scaled(n, k)?;
    let transfer = ZetaTransfer::<I>::new(&crate::exact::int(n), &crate::exact::int(k))?;
    for x in monomial_window(&param, window) {
        let lhs = psi_values(&x.zeta(n, k)?);
        let rhs = transfer.apply(&psi_values(&x));
        for (l, r) in lhs.iter().zip(rhs.iter()) {
            if l != &param.to_base(r)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Invariants of `e^±` obtained by pushing `Top(𝓔)` through the transfer rules.
pub fn transferred_top<I: ExactInt>(p: &I, q: &I, charge: Charge) -> Result<ChernVector<I>> {
    check_coprime(p, q)?;
    let q2 = q.clone() * q.clone();
    let pq = p.clone() * q.clone();
    Ok(match charge {
        Charge::Plus => {
            // e_q⁺ = ζ_{q,θ} 𝓔(q²θ − pq): n = q, k = pq
            let top = ZetaTransfer::new(q, &pq)?.apply_top(&top_e_field());
            let trace = ThetaLinear::from_ints(-pq, q2);
            ChernVector::new(trace, top)
        }
        Charge::Minus => {
            // e_b⁻ = ν ζ_{b,1−θ} 𝓔(ab − b²θ), ab − b²θ = b²(1−θ) − (b² − ab)
            let k = q2.clone() - pq.clone();
            let top = nu_transfer_top(&ZetaTransfer::new(q, &k)?.apply_top(&top_e_field()));
            let trace = ThetaLinear::from_ints(pq, -q2);
            ChernVector::new(trace, top)
        }
    })
}

/// Compares the closed forms with the transfer computation.
pub fn crosscheck_closed_forms<I: ExactInt>(p: &I, q: &I, charge: Charge) -> Result<bool> {
    let closed = match charge {
        Charge::Plus => top_eq_plus(p, q)?,
        Charge::Minus => top_eb_minus(p, q)?,
    };
    Ok(closed == transferred_top(p, q, charge)?)
}
