use indexmap::IndexMap;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chain_report, derive, raw_interval, verify_identities, Kappas, SeedParams};
use super::lemma31::lemma31_lenient;
use super::{DerivedParams, Lemma31Record};
use crate::chern::{chern_one, gamma_top, top_eb_minus, top_eq_plus, top_flat, ChernVector};
use crate::error::{Error, Result};
use crate::exact::{int, rat, rat_int, tl_sign, ExactInt, Interval, Sign, ThetaLinear};

/// Connes-Chern vectors of the three building-block units and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ChernBookkeeping<I: ExactInt> {
    pub e_q_minus: ChernVector<I>,
    pub gamma_e_s_plus: ChernVector<I>,
    pub flat: ChernVector<I>,
    pub sum: ChernVector<I>,
    pub expected: ChernVector<I>,
    /// `Top(e_q⁻) + Top(γe_s⁺) = Top(1)`.
    pub top_sum_ok: bool,
    /// Equality in all six coordinates, trace included.
    pub six_coordinates_ok: bool,
}

/// Verification record for one seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Certificate<I: ExactInt> {
    pub seed: SeedParams<I>,
    pub derived: DerivedParams<I>,
    pub kappas: Kappas<I>,
    pub interval: Interval<I>,
    pub identities: IndexMap<String, bool>,
    pub chain: IndexMap<String, bool>,
    pub positivity: IndexMap<String, bool>,
    pub chern: ChernBookkeeping<I>,
    pub tau0: ThetaLinear<I>,
    pub tau0_closed_form_ok: bool,
    pub lemma31: Lemma31Record<I>,
    pub tau_g: ThetaLinear<I>,
    pub tau_f: ThetaLinear<I>,
    pub overall: bool,
}

impl<I: ExactInt> Certificate<I> {
    /// Names of every failed check, in certificate order.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (group, map) in [
            ("identity", &self.identities),
            ("chain", &self.chain),
            ("positivity", &self.positivity),
        ] {
            out.extend(map.iter().filter(|(_, ok)| !**ok).map(|(n, _)| format!("{group}: {n}")));
        }
        let flags = [
            ("chern: top sum", self.chern.top_sum_ok),
            ("chern: six coordinates", self.chern.six_coordinates_ok),
            ("tau0 = 4m^2(A-B theta)", self.tau0_closed_form_ok),
            ("lemma31: identity", self.lemma31.identity.identity_ok),
            ("lemma31: hypothesis", self.lemma31.hypothesis_ok),
            ("lemma31: bound", self.lemma31.bound_ok),
        ];
        out.extend(flags.iter().filter(|f| !f.1).map(|f| f.0.to_string()));
        out
    }
}

fn positive<I: ExactInt>(x: &ThetaLinear<I>, window: &Interval<I>) -> bool {
    tl_sign(x, window) == Sign::Positive
}

/// Assembles and checks the full unit-decomposition bookkeeping for one seed.
pub fn certify<I: ExactInt>(seed: &SeedParams<I>, kappas: &Kappas<I>) -> Result<Certificate<I>> {
    let (k, m) = (seed.k.clone(), seed.m.clone());
    let big_m = m.clone() - int::<I>(2) * k.clone();
    if !m.gcd(&big_m).is_one() {
        return Err(Error::NotCoprime(m.to_string(), big_m.to_string()));
    }
    let d = derive(seed)?;
    let identities = verify_identities(seed, &d);
    let report = chain_report(seed, kappas)?;
    if !report.middle() {
        return Err(Error::ChainFailure(format!("empty interval for k={k}, m={m}")));
    }
    let window = raw_interval(seed, kappas)?;

    let z = |v: &I| Ratio::from_integer(v.clone());
    let tl = |c: Ratio<I>, s: Ratio<I>| ThetaLinear::new(c, s);
    let m2 = z(&m) * z(&m);
    let a_minus_b_theta = tl(z(&d.a), -z(&d.b));

    // Chern vectors of e_q⁻ (trace pq − q²θ) and γe_s⁺ (trace s²θ − rs).
    let e_q_minus = top_eb_minus(&d.p, &d.q)?;
    let gamma_e_s_plus = gamma_top(&top_eq_plus(&d.r, &d.s)?);
    let one = chern_one::<I>();
    let tau0 = &(&one.trace - &e_q_minus.trace) - &gamma_e_s_plus.trace;
    let tau0_expected = a_minus_b_theta.scale(&(rat_int::<I>(4) * &m2));
    let tau0_closed_form_ok = tau0 == tau0_expected;

    // Convergent traces and the positivity of A − Bθ over the interval.
    let mut positivity = IndexMap::new();
    let mut put = |name: &str, ok: bool| {
        positivity.insert(name.to_string(), ok);
    };
    let two_k = z(&k) * rat_int(2);
    let trace_m = tl(&two_k * z(&m), -m2.clone());
    let trace_q = e_q_minus.trace.clone();
    let trace_s = gamma_e_s_plus.trace.clone();
    let half = ThetaLinear::new(rat(1, 2), rat_int(0));
    let k1 = ThetaLinear::new(kappas.k1.clone(), rat_int(0));
    let k2 = ThetaLinear::new(kappas.k2.clone(), rat_int(0));
    put("0<2km-m^2θ<1/2", positive(&trace_m, &window) && positive(&(&half - &trace_m), &window));
    put("0<pq-q^2θ<k1", positive(&trace_q, &window) && positive(&(&k1 - &trace_q), &window));
    put("0<s^2θ-rs<k2", positive(&trace_s, &window) && positive(&(&k2 - &trace_s), &window));
    put("k2<s/B", &kappas.k2 * z(&d.b) < z(&d.s));
    put("1/2<s/B", z(&d.b) < z(&d.s) * rat_int(2));
    put("2ks-m(r+4)>0", z(&seed.k) * rat_int(2) * z(&d.s) > z(&m) * (z(&d.r) + rat_int(4)));
    {
        // (4mA − 2k)/(4mB − m) < r/s
        let lhs_num = rat_int::<I>(4) * z(&m) * z(&d.a) - &two_k;
        let lhs_den = rat_int::<I>(4) * z(&m) * z(&d.b) - z(&m);
        put("(4mA-2k)/(4mB-m)<r/s", lhs_num * z(&d.s) < z(&d.r) * lhs_den);
    }
    put("A-Bθ>0", positive(&a_minus_b_theta, &window));

    // Cyclic subprojection: N = m, M = m − 2k in the reflected base φ = 1 − θ.
    let t = a_minus_b_theta.scale(&z(&m));
    let lemma31 = lemma31_lenient(&m, &big_m, &t.in_reflected_base(), &window.reflect())?;
    let tau_g = lemma31.trace_h.in_reflected_base();
    let tau_f = tau_g.scale(&rat_int(4));
    put("τ(g)=m^2(A-Bθ)", tau_g == a_minus_b_theta.scale(&m2));

    let flat = ChernVector::new(tau_f.clone(), top_flat());
    let sum = &(&e_q_minus + &gamma_e_s_plus) + &flat;
    let top_sum_ok = &e_q_minus.top + &gamma_e_s_plus.top == one.top;
    let six_coordinates_ok = sum == one && tau_f == tau0;
    let chern = ChernBookkeeping {
        e_q_minus,
        gamma_e_s_plus,
        flat,
        sum,
        expected: one,
        top_sum_ok,
        six_coordinates_ok,
    };

    let mut cert = Certificate {
        seed: seed.clone(),
        derived: d,
        kappas: kappas.clone(),
        interval: window,
        identities,
        chain: report.links,
        positivity,
        chern,
        tau0,
        tau0_closed_form_ok,
        lemma31,
        tau_g,
        tau_f,
        overall: false,
    };
    cert.overall = cert.failures().is_empty();
    Ok(cert)
}

/// Seeds `k/m ∈ (0, ½)` in lowest terms with `m` odd and `k, m ≤ max`, sorted by `(m, k)`.
pub fn grid_seeds<I: ExactInt>(max: i64) -> Vec<SeedParams<I>> {
    let mut out = Vec::new();
    for m in (1..=max).filter(|m| m % 2 == 1) {
        for k in 1..=max {
            if let Ok(seed) = SeedParams::from_i64(k, m) {
                out.push(seed);
            }
        }
    }
    out
}

/// Certifies every grid seed in parallel; results keep the `(m, k)` order.
pub fn certify_grid<I: ExactInt>(max: i64, kappas: &Kappas<I>) -> Vec<Result<Certificate<I>>> {
    grid_seeds::<I>(max)
        .par_iter()
        .map(|seed| certify(seed, kappas))
        .collect()
}
