//! The `(k, m)` parameter family, its integer identities and inequality chain,
//! the intervals whose nested unions define the class 𝒢, and the certificate
//! for the unit-decomposition bookkeeping.

mod certificate;
mod lemma31;

use indexmap::IndexMap;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, int_serde, rat, rat_int, rat_serde, ExactInt, Interval};

pub use certificate::{certify, certify_grid, grid_seeds, Certificate, ChernBookkeeping};
pub use lemma31::{lemma31_arithmetic, lemma31_identity, Lemma31Identity, Lemma31Record};

/// A seed `k/m ∈ (0, ½)` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SeedParams<I: ExactInt> {
    #[serde(with = "int_serde")]
    pub k: I,
    #[serde(with = "int_serde")]
    pub m: I,
}

impl<I: ExactInt> SeedParams<I> {
    pub fn new(k: I, m: I) -> Result<Self> {
        let bad = |reason: &str| Error::BadSeed {
            k: k.to_string(),
            m: m.to_string(),
            reason: reason.into(),
        };
        if k < I::one() || m < I::one() {
            return Err(bad("k and m must be ≥ 1"));
        }
        if !k.gcd(&m).is_one() {
            return Err(bad("gcd(k, m) ≠ 1"));
        }
        if k.clone() + k.clone() >= m {
            return Err(bad("k/m must lie in (0, 1/2)"));
        }
        Ok(Self { k, m })
    }

    pub fn from_i64(k: i64, m: i64) -> Result<Self> {
        Self::new(int(k), int(m))
    }
}

/// The integers `n, q, s, p, r, A, B` attached to a seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DerivedParams<I: ExactInt> {
    #[serde(with = "int_serde")]
    pub n: I,
    #[serde(with = "int_serde")]
    pub q: I,
    #[serde(with = "int_serde")]
    pub s: I,
    #[serde(with = "int_serde")]
    pub p: I,
    #[serde(with = "int_serde")]
    pub r: I,
    #[serde(rename = "A", with = "int_serde")]
    pub a: I,
    #[serde(rename = "B", with = "int_serde")]
    pub b: I,
}

/// `n = 4mk+1`, `q = n²`, `s = n²+4m²`, `p = 4k²(2n+1)`, `r = p+2n−3`,
/// `A = 64k³m+8km+24k²−1`, `B = 2(16k²m²+8km+2m²+1)`.
pub fn derive<I: ExactInt>(seed: &SeedParams<I>) -> Result<DerivedParams<I>> {
    let c = |v: i64| int::<I>(v);
    let k = seed.k.clone();
    let m = seed.m.clone();
    let k2 = k.clone() * k.clone();
    let m2 = m.clone() * m.clone();
    let km = k.clone() * m.clone();
    let n = c(4) * km.clone() + c(1);
    let q = n.clone() * n.clone();
    let s = q.clone() + c(4) * m2.clone();
    let p = c(4) * k2.clone() * (c(2) * n.clone() + c(1));
    let r = p.clone() + c(2) * n.clone() - c(3);
    let a = c(64) * k2.clone() * km.clone() + c(8) * km.clone() + c(24) * k2.clone() - c(1);
    let b = c(2) * (c(16) * k2 * m2.clone() + c(8) * km + c(2) * m2 + c(1));
    let derived = DerivedParams { n, q, s, p, r, a, b };
    if let Some((name, _)) = verify_identities(seed, &derived).into_iter().find(|(_, ok)| !ok) {
        return Err(Error::BadSeed {
            k: seed.k.to_string(),
            m: seed.m.to_string(),
            reason: format!("identity {name} fails"),
        });
    }
    Ok(derived)
}

/// The eight exact identities of the family, in a fixed order.
pub fn verify_identities<I: ExactInt>(
    seed: &SeedParams<I>,
    d: &DerivedParams<I>,
) -> IndexMap<String, bool> {
    let z = |v: &I| Ratio::from_integer(v.clone());
    let (k, m) = (z(&seed.k), z(&seed.m));
    let (q, s, p, r, a, b) = (z(&d.q), z(&d.s), z(&d.p), z(&d.r), z(&d.a), z(&d.b));
    let c = rat_int::<I>;
    let half = rat::<I>(1, 2);
    let k2 = &k * &k;
    let m2 = &m * &m;
    let km = &k * &m;

    let mut out = IndexMap::new();
    let mut put = |name: &str, ok: bool| {
        out.insert(name.to_string(), ok);
    };
    put("ps-qr=1", &p * &s - &q * &r == c(1));
    put("sA-Br=1", &s * &a - &b * &r == c(1));
    put("2s=B+4m^2", c(2) * &s == &b + c(4) * &m2);
    put("s^2-q^2=4m^2B", &s * &s - &q * &q == c(4) * &m2 * &b);
    put("1+rs-pq=4m^2A", c(1) + &r * &s - &p * &q == c(4) * &m2 * &a);
    put(
        "rm^2-s(2km-1/2)=4k^2m^2+m^2+2km+1/2",
        &r * &m2 - &s * (c(2) * &km - &half) == c(4) * &k2 * &m2 + &m2 + c(2) * &km + &half,
    );
    put("2kq-pm=4k^2m+2k", c(2) * &k * &q - &p * &m == c(4) * &k2 * &m + c(2) * &k);
    put(
        "2ks-m(r+4)=4k^2m+2k-3m",
        c(2) * &k * &s - &m * (&r + c(4)) == c(4) * &k2 * &m + c(2) * &k - c(3) * &m,
    );
    out
}

/// `0 < κ₂ ≤ ½ < κ₁ < 1` and `κ₁ + κ₂ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Kappas<I: ExactInt> {
    #[serde(with = "rat_serde")]
    pub k1: Ratio<I>,
    #[serde(with = "rat_serde")]
    pub k2: Ratio<I>,
}

impl<I: ExactInt> Kappas<I> {
    pub fn new(k1: Ratio<I>, k2: Ratio<I>) -> Result<Self> {
        let half = rat::<I>(1, 2);
        let one = rat_int::<I>(1);
        let ok = k2 > Ratio::zero() && k2 <= half && half < k1 && k1 < one && &k1 + &k2 > one;
        if ok {
            Ok(Self { k1, k2 })
        } else {
            Err(Error::BadInput(format!(
                "κ = ({k1}, {k2}) violates 0 < κ₂ ≤ 1/2 < κ₁ < 1, κ₁ + κ₂ > 1"
            )))
        }
    }

    /// `κ = (3/4, 1/2)`.
    pub fn standard() -> Self {
        Self { k1: rat(3, 4), k2: rat(1, 2) }
    }
}

/// `a_num / a_den < b_num / b_den` for positive denominators, by cross-multiplication.
fn frac_lt<I: ExactInt>(a_num: &Ratio<I>, a_den: &I, b_num: &Ratio<I>, b_den: &I) -> bool {
    debug_assert!(a_den > &I::zero() && b_den > &I::zero());
    a_num * Ratio::from_integer(b_den.clone()) < b_num * Ratio::from_integer(a_den.clone())
}

/// The five links of
/// `(2km−½)/m² < r/s < (pq−κ₁)/q² < (rs+κ₂)/s² < p/q < 2k/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub links: IndexMap<String, bool>,
    /// `4k² ≥ κ₁/(1−κ₁)`, the sufficient condition for the left-inner link.
    pub left_inner_sufficient: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.links.values().all(|&ok| ok)
    }

    pub fn middle(&self) -> bool {
        self.links[MIDDLE]
    }
}

const MIDDLE: &str = "(pq-k1)/q^2<(rs+k2)/s^2";

pub fn chain_report<I: ExactInt>(seed: &SeedParams<I>, kappas: &Kappas<I>) -> Result<ChainReport> {
    let d = derive(seed)?;
    let z = |v: &I| Ratio::from_integer(v.clone());
    let c = rat_int::<I>;
    let (k, m) = (&seed.k, &seed.m);
    let m2 = m.clone() * m.clone();
    let q2 = d.q.clone() * d.q.clone();
    let s2 = d.s.clone() * d.s.clone();
    let outer_lo = c(2) * z(k) * z(m) - rat(1, 2);
    let lo = z(&d.p) * z(&d.q) - kappas.k1.clone();
    let hi = z(&d.r) * z(&d.s) + kappas.k2.clone();

    let mut links = IndexMap::new();
    links.insert("(2km-1/2)/m^2<r/s".into(), frac_lt(&outer_lo, &m2, &z(&d.r), &d.s));
    links.insert("r/s<(pq-k1)/q^2".into(), frac_lt(&z(&d.r), &d.s, &lo, &q2));
    links.insert(MIDDLE.into(), frac_lt(&lo, &q2, &hi, &s2));
    links.insert("(rs+k2)/s^2<p/q".into(), frac_lt(&hi, &s2, &z(&d.p), &d.q));
    links.insert("p/q<2k/m".into(), frac_lt(&z(&d.p), &d.q, &(c(2) * z(k)), m));

    let one = c(1);
    let left_inner_sufficient =
        c(4) * z(k) * z(k) * (&one - &kappas.k1) >= kappas.k1.clone();
    Ok(ChainReport { links, left_inner_sufficient })
}

pub fn verify_chain<I: ExactInt>(seed: &SeedParams<I>, kappas: &Kappas<I>) -> Result<bool> {
    Ok(chain_report(seed, kappas)?.holds())
}

/// `((pq − κ₁)/q², (rs + κ₂)/s²)` without checking the outer links.
fn raw_interval<I: ExactInt>(seed: &SeedParams<I>, kappas: &Kappas<I>) -> Result<Interval<I>> {
    let d = derive(seed)?;
    let z = |v: &I| Ratio::from_integer(v.clone());
    let lo = (z(&d.p) * z(&d.q) - kappas.k1.clone()) / (z(&d.q) * z(&d.q));
    let hi = (z(&d.r) * z(&d.s) + kappas.k2.clone()) / (z(&d.s) * z(&d.s));
    Interval::new(lo, hi).map_err(|_| {
        Error::ChainFailure(format!("empty interval for k={}, m={}", seed.k, seed.m))
    })
}

/// The 𝒢-interval of a seed; requires the full chain.
pub fn interval<I: ExactInt>(seed: &SeedParams<I>, kappas: &Kappas<I>) -> Result<Interval<I>> {
    let report = chain_report(seed, kappas)?;
    if let Some((name, _)) = report.links.iter().find(|(_, ok)| !**ok) {
        return Err(Error::ChainFailure(format!(
            "k={}, m={}: {name}",
            seed.k, seed.m
        )));
    }
    raw_interval(seed, kappas)
}

/// One finite union layer of 𝒢 restricted to the given seeds.
pub fn gdelta_cover<I: ExactInt>(
    seeds: &[SeedParams<I>],
    kappas: &Kappas<I>,
) -> Result<Vec<Interval<I>>> {
    seeds.iter().map(|s| interval(s, kappas)).collect()
}

/// All valid seeds with `k, m ≤ kmax` whose interval contains `theta`, sorted by `(m, k)`.
pub fn member<I: ExactInt>(theta: &Ratio<I>, kappas: &Kappas<I>, kmax: i64) -> Vec<SeedParams<I>> {
    let mut out = Vec::new();
    for m in 1..=kmax {
        for k in 1..=kmax {
            let Ok(seed) = SeedParams::<I>::from_i64(k, m) else {
                continue;
            };
            if let Ok(w) = interval(&seed, kappas) {
                if w.contains(theta) {
                    out.push(seed);
                }
            }
        }
    }
    out
}
