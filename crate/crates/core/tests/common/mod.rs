//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use rpq_core::deform::Preset;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn pw(x: &Q, n: i64) -> Q {
    if n >= 0 {
        num_traits::pow(x.clone(), n as usize)
    } else {
        num_traits::pow(x.recip(), (-n) as usize)
    }
}

/// Textbook closed forms, written out per preset.
pub fn closed_form(preset: Preset, p: &Q, qq: &Q, n: i64) -> Q {
    let one = Q::one();
    match preset {
        Preset::Heine => (one.clone() - pw(qq, n)) / (one - qq),
        Preset::Quesne => (one.clone() - pw(qq, -n)) / (qq - one),
        Preset::BiedenharnMacfarlane => (pw(qq, n) - pw(qq, -n)) / (qq - qq.recip()),
        Preset::JagannathanSrinivasa => {
            if p == qq {
                qi(n) * pw(p, n - 1)
            } else {
                (pw(p, n) - pw(qq, n)) / (p - qq)
            }
        }
        Preset::ChakrabartyJagannathan => (pw(p, -n) - pw(qq, n)) / (p.recip() - qq),
        Preset::HounkonnouNgompe => (pw(p, n) - pw(qq, -n)) / (qq - p.recip()),
    }
}

pub fn closed_factorial(preset: Preset, p: &Q, qq: &Q, n: i64) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * closed_form(preset, p, qq, k))
}

/// `Π_{i<n} [m-i]/[i+1]`.
pub fn closed_binomial(preset: Preset, p: &Q, qq: &Q, m: i64, n: i64) -> Q {
    (0..n).fold(Q::one(), |acc, i| acc * closed_form(preset, p, qq, m - i) / closed_form(preset, p, qq, i + 1))
}

/// Permutations `σ1 > σ2 < σ3 > ...` of `{1..n}`, counted by brute force.
pub fn alternating_permutations(n: usize) -> u64 {
    fn rec(used: &mut Vec<bool>, last: usize, pos: usize, n: usize) -> u64 {
        if pos == n {
            return 1;
        }
        let mut c = 0;
        for v in 0..n {
            if used[v] {
                continue;
            }
            // position pos (0-based) compares with pos-1: descent after odd count
            let ok = pos == 0 || if pos % 2 == 1 { v < last } else { v > last };
            if ok {
                used[v] = true;
                c += rec(used, v, pos + 1, n);
                used[v] = false;
            }
        }
        c
    }
    if n == 0 {
        return 1;
    }
    rec(&mut vec![false; n], 0, 0, n)
}

fn binom(n: i64, k: i64) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * qi(n - i) / qi(i + 1))
}

/// `B_0..B_n` from `Σ_{k<=m} C(m+1,k) B_k = 0`.
pub fn bernoulli_recurrence(n: usize) -> Vec<Q> {
    let mut b = vec![Q::one()];
    for m in 1..=n as i64 {
        let s: Q = (0..m).map(|k| binom(m + 1, k) * &b[k as usize]).sum();
        b.push(-s / qi(m + 1));
    }
    b
}

/// `ζ_p(s)ζ_p(s-1)ζ_p(2s-1)ζ_p(2s-2)/ζ_p(3s-1)` with `ζ_p(u) = 1/(1 - p^-u)`.
pub fn zeta_spin_oracle(p: i64, s: i64) -> Q {
    let z = |u: i64| Q::one() / (Q::one() - pw(&qi(p), -u));
    z(s) * z(s - 1) * z(2 * s - 1) * z(2 * s - 2) / z(3 * s - 1)
}

/// Morita's `Γ_p(n) = (-1)^n Π_{0<j<n, p∤j} j`.
pub fn morita_gamma(n: i64, p: i64) -> Q {
    let prod = (1..n).filter(|j| j % p != 0).fold(Q::one(), |acc, j| acc * qi(j));
    if n % 2 == 0 {
        prod
    } else {
        -prod
    }
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}
