mod common;

use common::{arb_element, arb_gauss, arb_phase_scalar, r, theta};
use nctorus::exact::{root_of_unity, tl_sign, Sign};
use nctorus::traces::{psi, TraceKind};
use nctorus::{expr, Interval, NCElement, Param, PhaseScalar, ThetaLinear};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (NCElement, NCElement)> {
    (arb_element(theta()), arb_element(theta()))
}

fn triple() -> impl Strategy<Value = (NCElement, NCElement, NCElement)> {
    (arb_element(theta()), arb_element(theta()), arb_element(theta()))
}

fn scaled_pair() -> impl Strategy<Value = (i64, i64, NCElement, NCElement)> {
    (1i64..=4, -3i64..=3).prop_flat_map(|(n, k)| {
        let param = Param::scaled(n, k).unwrap();
        (Just(n), Just(k), arb_element(param.clone()), arb_element(param))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative((x, y, z) in triple()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes((x, y, z) in triple()) {
        let left = x.mul(&y.add(&z).unwrap()).unwrap();
        let right = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let left = y.add(&z).unwrap().mul(&x).unwrap();
        let right = y.mul(&x).unwrap().add(&z.mul(&x).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn additive_group_and_unit(x in arb_element(theta())) {
        prop_assert!(x.sub(&x).unwrap().is_zero());
        let one = NCElement::one(theta());
        prop_assert_eq!(x.mul(&one).unwrap(), x.clone());
        prop_assert_eq!(one.mul(&x).unwrap(), x);
    }

    #[test]
    fn star_is_an_antilinear_anti_involution((x, y) in pair(), c in arb_phase_scalar()) {
        prop_assert_eq!(x.star().star(), x.clone());
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.star(), y.star().mul(&x.star()).unwrap());
        prop_assert_eq!(x.scale(&c).star(), x.star().scale(&c.conj()));
    }

    #[test]
    fn sigma_is_an_order_four_automorphism((x, y) in pair()) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.sigma(), x.sigma().mul(&y.sigma()).unwrap());
        prop_assert_eq!(x.sigma_pow(4), x.clone());
        prop_assert_eq!(x.sigma().star(), x.star().sigma());
        prop_assert_eq!(x.sigma().gamma(), x.gamma().sigma());
    }

    #[test]
    fn sigma_squared_inverts_generators(x in arb_element(theta())) {
        // σ² is the flip U ↦ U⁻¹, V ↦ V⁻¹, which fixes every coefficient.
        let flipped = x
            .terms()
            .map(|(&(m, n), c)| NCElement::monomial(theta(), c.clone(), -m, -n))
            .fold(NCElement::zero(theta()), |acc, t| acc.add(&t).unwrap());
        prop_assert_eq!(x.sigma_pow(2), flipped);
    }

    #[test]
    fn gamma_is_an_involutive_automorphism((x, y) in pair()) {
        prop_assert_eq!(x.gamma().gamma(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().gamma(), x.gamma().mul(&y.gamma()).unwrap());
    }

    #[test]
    fn nu_is_a_star_homomorphism(
        (x, y) in (arb_element(Param::one_minus_theta()), arb_element(Param::one_minus_theta()))
    ) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.nu().unwrap(), x.nu().unwrap().mul(&y.nu().unwrap()).unwrap());
        prop_assert_eq!(x.star().nu().unwrap(), x.nu().unwrap().star());
    }

    #[test]
    fn zeta_is_a_star_homomorphism((n, k, x, y) in scaled_pair()) {
        let xy = x.mul(&y).unwrap();
        let (zx, zy) = (x.zeta(n, k).unwrap(), y.zeta(n, k).unwrap());
        prop_assert_eq!(xy.zeta(n, k).unwrap(), zx.mul(&zy).unwrap());
        prop_assert_eq!(x.star().zeta(n, k).unwrap(), zx.star());
    }

    #[test]
    fn traces_are_linear((x, y) in pair(), c in arb_gauss()) {
        let cs = PhaseScalar::constant(c);
        for kind in TraceKind::ALL {
            prop_assert_eq!(psi(kind, &x.add(&y).unwrap()), &psi(kind, &x) + &psi(kind, &y));
            prop_assert_eq!(psi(kind, &x.scale(&cs)), &psi(kind, &x) * &cs);
        }
    }

    #[test]
    fn trace_laws_hold_on_sums((x, y) in pair()) {
        for kind in TraceKind::ALL {
            let target = psi(kind, &x.sigma());
            prop_assert_eq!(target, psi(kind, &x));
            if let Some(power) = kind.trace_power() {
                let lhs = psi(kind, &x.mul(&y).unwrap());
                let rhs = psi(kind, &y.sigma_pow(power).mul(&x).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn print_parse_round_trip(x in arb_element(theta())) {
        let text = expr::print(&x);
        prop_assert_eq!(expr::parse(&text, &theta()).unwrap(), x);
    }

    #[test]
    fn tl_sign_is_monotone_in_the_window(
        c in -20i64..=20, s in -20i64..=20,
        a in 0i64..40, w in 1i64..40, inner in 0i64..100,
    ) {
        let x = ThetaLinear::new(r(c, 1), r(s, 1));
        let outer = Interval::new(r(a, 40), r(a + w, 40)).unwrap();
        let lo = r(a, 40) + r(w * inner, 40 * 200);
        let inner_iv = Interval::new(lo.clone(), lo + r(w, 40 * 2)).unwrap();
        prop_assert!(inner_iv.is_within(&outer));
        let outer_sign = tl_sign(&x, &outer);
        if matches!(outer_sign, Sign::Positive | Sign::Negative | Sign::Zero) {
            prop_assert_eq!(tl_sign(&x, &inner_iv), outer_sign);
        }
        let flipped = match outer_sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            other => other,
        };
        prop_assert_eq!(tl_sign(&(-&x), &outer), flipped);
    }

    #[test]
    fn root_of_unity_is_multiplicative(a in -16i64..=16, b in -16i64..=16) {
        let (x, y) = (r(a, 4), r(b, 4));
        let sum = root_of_unity(&(&x + &y)).unwrap();
        prop_assert_eq!(sum, &root_of_unity(&x).unwrap() * &root_of_unity(&y).unwrap());
    }

    #[test]
    fn root_of_unity_rejects_non_quarters(n in -50i64..=50, d in 5i64..=12) {
        let x = r(n, d);
        prop_assert_eq!(root_of_unity(&x).is_ok(), (x * r(4, 1)).is_integer());
    }
}
