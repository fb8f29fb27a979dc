mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rpq_core::deform::{DeformParams, Preset};
use rpq_core::error::Error;
use rpq_core::series::{
    exp_lower, generating_polynomials, trig_series, zigzag_numbers, Family, PolyFamily, SpectralCalculus, Trig,
};

fn small() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn binom(n: usize, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * qi((n - i) as i64) / qi(i as i64 + 1))
}

#[test]
fn zigzag_matches_brute_force() {
    let a = zigzag_numbers(&DeformParams::classical(), 10).unwrap();
    for n in 0..10 {
        assert_eq!(a[n], qi(alternating_permutations(n) as i64), "A_{n}");
    }
    assert!(zigzag_numbers(&DeformParams::classical(), 0).is_err());
}

#[test]
fn classical_bernoulli_numbers() {
    let b = generating_polynomials(&DeformParams::classical(), PolyFamily::Bernoulli, &Q::zero(), 16, Family::Lower).unwrap();
    assert_eq!(b, bernoulli_recurrence(16));
    assert_eq!(b[12], q(-691, 2730));
}

#[test]
fn classical_trig_identities() {
    let c = DeformParams::classical();
    let order = 12;
    let sin = trig_series(&c, Trig::Sin, Family::Lower, order, false).unwrap().to_plain(&c).unwrap();
    let cos = trig_series(&c, Trig::Cos, Family::Lower, order, false).unwrap().to_plain(&c).unwrap();
    let one = sin.mul(&sin).unwrap().add(&cos.mul(&cos).unwrap()).unwrap().truncate(order);
    for k in 0..=order as i64 {
        assert_eq!(one.coefficient(k), if k == 0 { Q::one() } else { Q::zero() });
    }
    let tan = trig_series(&c, Trig::Tan, Family::Lower, order, false).unwrap();
    let back = tan.mul(&cos).unwrap().truncate(order);
    for k in 0..=order as i64 {
        assert_eq!(back.coefficient(k), sin.coefficient(k));
    }
}

#[test]
fn csc_needs_laurent_mode() {
    let c = DeformParams::classical();
    assert!(matches!(trig_series(&c, Trig::Csc, Family::Lower, 8, false), Err(Error::PoleAtOrigin(_))));
    let csc = trig_series(&c, Trig::Csc, Family::Lower, 8, true).unwrap();
    assert!(csc.is_laurent());
    assert_eq!(csc.coefficient(-1), Q::one());
    assert_eq!(csc.coefficient(1), q(1, 6));
}

#[test]
fn exponential_derivative_dilates() {
    let d = DeformParams::js(q(3, 2), q(1, 3)).unwrap();
    let e = exp_lower(&d, 10).unwrap();
    let de = e.rpq_derivative(&d).unwrap().to_plain(&d).unwrap();
    let dilated = e.to_plain(&d).unwrap().dilate(d.xi1());
    for k in 0..10i64 {
        assert_eq!(de.coefficient(k), dilated.coefficient(k), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classical_bernoulli_polynomials(x in small()) {
        let c = DeformParams::classical();
        let got = generating_polynomials(&c, PolyFamily::Bernoulli, &x, 10, Family::Lower).unwrap();
        let b = bernoulli_recurrence(10);
        for n in 0..=10usize {
            let want: Q = (0..=n).map(|k| binom(n, k) * &b[k] * pw(&x, (n - k) as i64)).sum();
            prop_assert_eq!(&got[n], &want);
        }
    }

    #[test]
    fn classical_euler_reflection(x in small()) {
        // E_n(x + 1) + E_n(x) = 2 x^n
        let c = DeformParams::classical();
        let e0 = generating_polynomials(&c, PolyFamily::Euler, &x, 10, Family::Lower).unwrap();
        let e1 = generating_polynomials(&c, PolyFamily::Euler, &(&x + Q::one()), 10, Family::Lower).unwrap();
        for n in 0..=10usize {
            prop_assert_eq!(&e0[n] + &e1[n], qi(2) * pw(&x, n as i64));
        }
    }

    #[test]
    fn genocchi_is_scaled_euler(x in small(), which in 0usize..3, upper in any::<bool>()) {
        let (pr, p, qq) = [
            (Preset::JagannathanSrinivasa, q(3, 2), q(1, 3)),
            (Preset::Heine, qi(1), q(1, 2)),
            (Preset::BiedenharnMacfarlane, qi(1), q(2, 3)),
        ][which].clone();
        let d = DeformParams::new(pr, p, qq).unwrap();
        let fam = if upper { Family::Upper } else { Family::Lower };
        let e = generating_polynomials(&d, PolyFamily::Euler, &x, 8, fam).unwrap();
        let g = generating_polynomials(&d, PolyFamily::Genocchi, &x, 9, fam).unwrap();
        prop_assert!(g[0].is_zero());
        for n in 0..=8usize {
            prop_assert_eq!(&g[n + 1], &(d.number(n as i64 + 1).unwrap() * &e[n]));
        }
    }
}
