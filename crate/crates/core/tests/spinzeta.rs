mod common;

use common::*;
use num_traits::One;
use proptest::prelude::*;
use rpq_core::arith::PadicNumber;
use rpq_core::error::Error;
use rpq_core::spinzeta::{
    commutator, congruence_level, ghost_boundary, igusa_zf, mat_exp, mat_log, spin_combination, spin_generators,
    t_of, zeta_spin_half, zeta_spin_rational, zeta_subtraction_display, GhostGroup, Mat2Padic,
};

const N: u32 = 12;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

#[test]
fn zeta_poles_are_named() {
    match zeta_spin_half(5, &qi(1)) {
        Err(Error::Pole(m)) => assert!(m.contains("ζ_p(s-1)"), "{m}"),
        other => panic!("expected a pole, got {other:?}"),
    }
    assert!(zeta_spin_half(4, &qi(3)).is_err());
}

#[test]
fn igusa_matches_closed_form() {
    for p in [3i64, 5, 7] {
        let zf = igusa_zf(p as u64).unwrap();
        assert!(zf.eval(&q(1, p)).is_err());
        for s in 2..=6 {
            let t = pw(&qi(p), -s);
            let ip = q(1, p);
            let want = (Q::one() - &ip) * (Q::one() - &ip * &t)
                / ((Q::one() - qi(p) * &t * &t) * (Q::one() - qi(p) * &t));
            assert_eq!(zf.eval(&t).unwrap(), want);
        }
    }
    assert!(igusa_zf(2).is_err());
}

#[test]
fn display_form_is_the_spin_zeta() {
    for p in [3u64, 5, 7, 11] {
        let a = zeta_spin_rational(p).unwrap();
        let b = zeta_subtraction_display(p).unwrap();
        for s in 2..=8 {
            let t = t_of(p, &qi(s)).unwrap();
            assert_eq!(a.eval(&t).unwrap(), b.eval(&t).unwrap(), "p = {p}, s = {s}");
        }
    }
}

#[test]
fn ghost_boundaries() {
    for l in 1..=30i64 {
        assert_eq!(ghost_boundary(GhostGroup::GoOdd, l).unwrap(), qi((l - 1) * (l + 1)));
        assert_eq!(ghost_boundary(GhostGroup::Gsp, l).unwrap(), q(l * l + l - 4, 2));
        assert_eq!(ghost_boundary(GhostGroup::GoEvenPlus, l).unwrap(), q(l * l - l - 4, 2));
    }
    assert!(ghost_boundary(GhostGroup::Gsp, 0).is_err());
    assert_eq!(GhostGroup::parse("c").unwrap(), GhostGroup::Gsp);
}

#[test]
fn log_needs_unit_determinant() {
    let two = qi(2);
    let g = Mat2Padic::from_rationals([&two, &qi(0), &qi(0), &qi(1)], 5, N).unwrap();
    assert!(mat_log(&g).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spin_zeta_product(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), s in 2i64..10) {
        let v = zeta_spin_half(p, &qi(s)).unwrap().exact;
        prop_assert_eq!(&v, &zeta_spin_oracle(p as i64, s));
        let t = t_of(p, &qi(s)).unwrap();
        prop_assert_eq!(zeta_spin_rational(p).unwrap().eval(&t).unwrap(), v);
    }

    #[test]
    fn commutation_relations(p in prime(), hn in -20i64..20, hd in 1i64..9) {
        prop_assume!(hn != 0 && hd % p as i64 != 0);
        let h = q(hn, hd);
        let g = spin_generators(&h, p, N).unwrap();
        let hp = PadicNumber::from_rational(&h, p, N).unwrap();
        prop_assert!(commutator(&g.z, &g.plus).unwrap().eq_to_precision(&g.plus.scale(&hp).unwrap()).unwrap());
        prop_assert!(commutator(&g.z, &g.minus).unwrap().eq_to_precision(&g.minus.scale(&hp.neg()).unwrap()).unwrap());
        let two_h = hp.mul_i64(2).unwrap();
        prop_assert!(commutator(&g.plus, &g.minus).unwrap().eq_to_precision(&g.z.scale(&two_h).unwrap()).unwrap());
    }

    #[test]
    fn exp_log_round_trip(p in prime(), a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let g = spin_generators(&qi(1), p, N).unwrap();
        let pp = |k: i64| PadicNumber::from_i64(k * p as i64, p, N).unwrap();
        let x = spin_combination(&g, &pp(a), &pp(2 * b), &pp(c)).unwrap();
        let one = PadicNumber::one(p, N);
        let e = mat_exp(&x, &one).unwrap();
        prop_assert!(e.det().unwrap().eq_to_precision(&one).unwrap());
        prop_assert!(congruence_level(&e) >= 1);
        prop_assert!(mat_log(&e).unwrap().eq_to_precision(&x).unwrap());
    }
}
