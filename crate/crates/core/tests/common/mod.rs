#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::Ratio;
use nctorus::{GaussRat, NCElement, Param, PhaseScalar, Rat};
use proptest::prelude::*;

pub fn r(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| r(n, d))
}

pub fn arb_gauss() -> impl Strategy<Value = GaussRat> {
    (arb_rat(), arb_rat()).prop_map(|(re, im)| GaussRat::new(re, im))
}

/// Phase exponents are quarter integers so every rebase stays in the Gaussian field.
pub fn arb_phase_scalar() -> impl Strategy<Value = PhaseScalar> {
    prop::collection::vec((arb_gauss(), -8i64..=8), 1..=3).prop_map(|parts| {
        parts
            .into_iter()
            .map(|(g, q)| PhaseScalar::term(g, r(q, 4)))
            .fold(PhaseScalar::from_int(0), |acc, x| &acc + &x)
    })
}

pub fn arb_element(param: Param) -> impl Strategy<Value = NCElement> {
    prop::collection::vec((arb_phase_scalar(), -3i64..=3, -3i64..=3), 0..=4).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(c, m, n)| NCElement::monomial(param.clone(), c, m, n))
            .fold(NCElement::zero(param.clone()), |acc, x| acc.add(&x).unwrap())
    })
}

pub fn theta() -> Param {
    Param::theta()
}
