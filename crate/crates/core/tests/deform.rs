mod common;

use common::*;
use num_traits::One;
use proptest::prelude::*;
use rpq_core::deform::{DeformParams, Preset};

fn pos_rational() -> impl Strategy<Value = Q> {
    (1i64..=9, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

#[test]
fn js_with_p_one_is_heine() {
    let h = DeformParams::new(Preset::Heine, qi(1), q(2, 3)).unwrap();
    let j = DeformParams::js(qi(1), q(2, 3)).unwrap();
    for n in 0..=20 {
        assert_eq!(h.number(n).unwrap(), j.number(n).unwrap(), "n = {n}");
    }
}

#[test]
fn known_values() {
    let j = DeformParams::js(qi(1), q(1, 2)).unwrap();
    assert_eq!(j.number(0).unwrap(), qi(0));
    assert_eq!(j.number(1).unwrap(), qi(1));
    assert_eq!(j.number(3).unwrap(), q(7, 4));
    assert_eq!(j.factorial(0).unwrap(), qi(1));
    assert_eq!(j.factorial(3).unwrap(), q(21, 8));
    assert!(j.factorial(-1).is_err());
    assert!(j.binomial(3, 4).is_err());
}

#[test]
fn confluent_parameters() {
    let j = DeformParams::js(q(3, 2), q(3, 2)).unwrap();
    for n in 0..=16 {
        assert_eq!(j.number(n).unwrap(), qi(n) * pw(&q(3, 2), n - 1));
    }
    let c = DeformParams::classical();
    assert_eq!(c.binomial(10, 4).unwrap(), qi(210));
}

#[test]
fn every_preset_matches_closed_form() {
    let cases = [
        (Preset::Heine, qi(1), q(3, 5)),
        (Preset::Quesne, qi(1), q(5, 3)),
        (Preset::BiedenharnMacfarlane, qi(1), q(2, 7)),
        (Preset::JagannathanSrinivasa, q(5, 4), q(2, 3)),
        (Preset::ChakrabartyJagannathan, q(4, 5), q(1, 3)),
        (Preset::HounkonnouNgompe, q(3, 2), qi(3)),
    ];
    for (pr, p, qq) in cases {
        let d = DeformParams::new(pr, p.clone(), qq.clone()).unwrap();
        for n in 0..=24 {
            assert_eq!(d.number(n).unwrap(), closed_form(pr, &p, &qq, n), "{pr} n = {n}");
        }
        assert_eq!(d.binomial(12, 5).unwrap(), closed_binomial(pr, &p, &qq, 12, 5));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn js_numbers_match_closed_form(p in pos_rational(), qq in pos_rational(), n in 0i64..24) {
        let d = DeformParams::js(p.clone(), qq.clone()).unwrap();
        prop_assert_eq!(d.number(n).unwrap(), closed_form(Preset::JagannathanSrinivasa, &p, &qq, n));
    }

    #[test]
    fn negative_numbers_reflect(p in pos_rational(), qq in pos_rational(), n in 1i64..16) {
        let d = DeformParams::js(p.clone(), qq.clone()).unwrap();
        let want = -pw(&(&p * &qq), -n) * d.number(n).unwrap();
        prop_assert_eq!(d.number(-n).unwrap(), want);
    }

    #[test]
    fn factorial_recursion(p in pos_rational(), qq in pos_rational(), n in 1i64..20) {
        let d = DeformParams::js(p, qq).unwrap();
        prop_assert_eq!(d.factorial(n).unwrap(), d.factorial(n - 1).unwrap() * d.number(n).unwrap());
    }

    #[test]
    fn binomial_symmetry_and_pascal(p in pos_rational(), qq in pos_rational(), m in 1i64..14, k in 0i64..14) {
        prop_assume!(k <= m);
        let d = DeformParams::js(p.clone(), qq.clone()).unwrap();
        let c = d.binomial(m, k).unwrap();
        prop_assert_eq!(&c, &d.binomial(m, m - k).unwrap());
        // C(m+1, k) = p^k C(m, k) + q^(m+1-k) C(m, k-1)
        if k >= 1 {
            let rhs = pw(&p, k) * &c + pw(&qq, m + 1 - k) * d.binomial(m, k - 1).unwrap();
            prop_assert_eq!(d.binomial(m + 1, k).unwrap(), rhs);
        }
        let f = d.factorials_up_to(m).unwrap();
        prop_assert_eq!(c * &f[k as usize] * &f[(m - k) as usize], f[m as usize].clone());
    }

    #[test]
    fn numbers_up_to_agrees_with_pointwise(p in pos_rational(), qq in pos_rational()) {
        let d = DeformParams::js(p, qq).unwrap();
        let all = d.numbers_up_to(12).unwrap();
        for (n, x) in all.iter().enumerate() {
            prop_assert_eq!(x, &d.number(n as i64).unwrap());
        }
        prop_assert_eq!(d.factorials_up_to(0).unwrap(), vec![Q::one()]);
    }
}
