mod common;

use common::*;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rpq_core::deform::{DeformParams, Preset};
use rpq_core::error::Error;
use rpq_core::gammabeta::{
    beta_rpq, gamma_rpq, power_basis, taylor_expand, taylor_reconstruct, with_natural_twist, SignMode, TaylorForm,
    DEFAULT_TRUNCATION,
};
use rpq_core::series::PolynomialExact;

fn js_below() -> impl Strategy<Value = (Q, Q)> {
    (1i64..=6, 1i64..=9).prop_map(|(a, b)| (q(a + 1, 2), q(b, 10)))
}

fn small() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

#[test]
fn poles_and_domain() {
    let d = DeformParams::js(qi(1), q(1, 2)).unwrap();
    for z in [0i64, -1, -4] {
        assert!(matches!(gamma_rpq(&qi(z), &d, DEFAULT_TRUNCATION), Err(Error::Pole(_))));
    }
    let wrong = DeformParams::js(q(1, 2), qi(1)).unwrap();
    assert!(gamma_rpq(&q(1, 2), &wrong, DEFAULT_TRUNCATION).is_err());
}

#[test]
fn half_integer_recurrence() {
    // q = 16/25 gives [1/2] = (1 - 4/5)/(1 - 16/25) = 5/9
    let d = DeformParams::js(qi(1), q(16, 25)).unwrap();
    let g0 = gamma_rpq(&q(1, 2), &d, DEFAULT_TRUNCATION).unwrap();
    let g1 = gamma_rpq(&q(3, 2), &d, DEFAULT_TRUNCATION).unwrap();
    assert!(!g0.exact && g0.tail_bound < Q::one());
    let res = (&g1.value - q(5, 9) * &g0.value).abs();
    let allowed = g1.value.abs() * (&g1.tail_bound + &g0.tail_bound) / (Q::one() - &g1.tail_bound);
    assert!(res <= allowed, "residual {res}");
    let irrational = DeformParams::js(qi(1), q(1, 4)).unwrap();
    assert!(matches!(gamma_rpq(&q(1, 2), &irrational, DEFAULT_TRUNCATION), Err(Error::NotExact(_))));
}

#[test]
fn power_basis_negative_exponent_inverts() {
    let d = with_natural_twist(&DeformParams::js(q(3, 2), q(1, 3)).unwrap()).unwrap();
    let (x, y) = (q(5, 2), q(-1, 7));
    for m in 1..=5i64 {
        let neg = power_basis(&x, &y, -m, SignMode::Minus, &d).unwrap();
        let shifted = power_basis(&(&x * pw(d.xi1(), -m)), &(&y * pw(d.xi2(), -m)), m, SignMode::Minus, &d).unwrap();
        assert_eq!(neg * shifted, Q::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gamma_at_integers_is_factorial((p, qq) in js_below(), n in 1i64..16) {
        prop_assume!(qq < p);
        let d = DeformParams::js(p.clone(), qq.clone()).unwrap();
        let g = gamma_rpq(&qi(n), &d, DEFAULT_TRUNCATION).unwrap();
        prop_assert!(g.exact);
        prop_assert_eq!(g.value, closed_factorial(Preset::JagannathanSrinivasa, &p, &qq, n - 1));
    }

    #[test]
    fn beta_is_symmetric((p, qq) in js_below(), x in 1i64..8, y in 1i64..8) {
        prop_assume!(qq < p);
        let d = DeformParams::js(p.clone(), qq.clone()).unwrap();
        let b = beta_rpq(&qi(x), &qi(y), &d, DEFAULT_TRUNCATION).unwrap();
        prop_assert_eq!(&b.value, &beta_rpq(&qi(y), &qi(x), &d, DEFAULT_TRUNCATION).unwrap().value);
        let f = |n| closed_factorial(Preset::JagannathanSrinivasa, &p, &qq, n);
        prop_assert_eq!(b.value, f(x - 1) * f(y - 1) / f(x + y - 1));
    }

    #[test]
    fn power_basis_is_a_product((p, qq) in js_below(), x in small(), y in small(), n in 0i64..7) {
        let d = with_natural_twist(&DeformParams::js(p.clone(), qq.clone()).unwrap()).unwrap();
        let want = (0..n).fold(Q::one(), |acc, i| acc * (&x * pw(&p, i) + &y * pw(&qq, i)));
        prop_assert_eq!(power_basis(&x, &y, n, SignMode::Plus, &d).unwrap(), want);
    }

    #[test]
    fn taylor_round_trip(
        (p, qq) in js_below(),
        cs in prop::collection::vec(small(), 1..6),
        a in small(),
        reverse in any::<bool>(),
    ) {
        prop_assume!(p != qq);
        let d = with_natural_twist(&DeformParams::js(p, qq).unwrap()).unwrap();
        let f = PolynomialExact::from_coeffs(cs);
        let form = if reverse { TaylorForm::Reverse } else { TaylorForm::Forward };
        let c = taylor_expand(&f, &a, &d, form).unwrap();
        prop_assert_eq!(taylor_reconstruct(&c, &a, &d, form), f);
    }
}
