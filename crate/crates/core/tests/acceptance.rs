//! Acceptance criteria 1-7: one PASS/FAIL line per criterion.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rpq_core::arith::{ten_pow_neg, PadicNumber};
use rpq_core::deform::{DeformParams, Preset};
use rpq_core::gammabeta::{self, gamma_rpq, rational_samples, DEFAULT_TRUNCATION};
use rpq_core::padicfun::{self, agree, TwistParams};
use rpq_core::quadrature::{definite_integral_poly, jackson_sum_poly, QuadratureSpec, Regime};
use rpq_core::series::{self, Family, PolyFamily, PolynomialExact, SpectralCalculus};
use rpq_core::spinzeta::{self, GhostGroup, Mat2Padic};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn preset_params() -> Vec<(Preset, Q, Q)> {
    vec![
        (Preset::Heine, qi(1), q(1, 2)),
        (Preset::Quesne, qi(1), qi(2)),
        (Preset::BiedenharnMacfarlane, q(1, 2), q(1, 2)),
        (Preset::JagannathanSrinivasa, qi(1), q(1, 2)),
        (Preset::ChakrabartyJagannathan, qi(1), q(1, 2)),
        (Preset::HounkonnouNgompe, qi(1), qi(2)),
    ]
}

fn criterion_1() -> Outcome {
    for (pr, p, qq) in preset_params() {
        let d = DeformParams::new(pr, p.clone(), qq.clone()).map_err(e2s)?;
        let nums = d.numbers_up_to(64).map_err(e2s)?;
        let facts = d.factorials_up_to(64).map_err(e2s)?;
        let oracle: Vec<Q> = (0..=64).map(|n| closed_form(pr, &p, &qq, n)).collect();
        // unreduced oracle factorials (numerator, denominator); compared by cross-multiplication
        let mut oracle_fact = vec![(BigInt::one(), BigInt::one())];
        for n in 1..=64usize {
            let (a, b) = &oracle_fact[n - 1];
            let next = (a * oracle[n].numer(), b * oracle[n].denom());
            oracle_fact.push(next);
        }
        let same = |x: &Q, (a, b): &(BigInt, BigInt)| x.numer() * b == x.denom() * a;
        for n in 0..=64usize {
            ensure(nums[n] == oracle[n], || format!("{pr}: [{n}] = {} but oracle {}", nums[n], oracle[n]))?;
            ensure(same(&facts[n], &oracle_fact[n]), || format!("{pr}: [{n}]! differs from the oracle"))?;
            if n > 0 {
                let prev = (facts[n - 1].numer() * nums[n].numer(), facts[n - 1].denom() * nums[n].denom());
                ensure(same(&facts[n], &prev), || format!("{pr}: recursion at {n}"))?;
            }
        }
        for n in [0i64, 1, 7, 33, 64] {
            ensure(d.number(n).map_err(e2s)? == oracle[n as usize], || format!("{pr}: number({n})"))?;
            ensure(same(&d.factorial(n).map_err(e2s)?, &oracle_fact[n as usize]), || format!("{pr}: factorial({n})"))?;
        }
        for (m, n) in [(0i64, 0i64), (1, 0), (1, 1), (5, 2), (12, 5), (17, 8), (30, 11), (64, 1), (64, 20), (64, 32), (64, 63)] {
            let (mu, nu) = (m as usize, n as usize);
            let b = d.binomial(m, n).map_err(e2s)?;
            // C [n]! [m-n]! = [m]!
            let (fa, fb) = (&oracle_fact[nu], &oracle_fact[mu - nu]);
            let lhs = (b.numer() * &fa.0 * &fb.0, b.denom() * &fa.1 * &fb.1);
            let (ma, mb) = &oracle_fact[mu];
            ensure(&lhs.0 * mb == &lhs.1 * ma, || format!("{pr}: C({m},{n}) differs from the oracle"))?;
            ensure(b == d.binomial(m, m - n).map_err(e2s)?, || format!("{pr}: C({m},{n}) not symmetric"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let sample = PolynomialExact::from_coeffs((0..=12).map(|k| q(5 - 3 * k, k + 1)));
    let (a, b) = (q(-1, 3), q(7, 4));
    for (pr, p, qq) in preset_params() {
        let d = DeformParams::new(pr, p.clone(), qq.clone()).map_err(e2s)?;
        for n in 1..=12usize {
            let dz = PolynomialExact::monomial(Q::one(), n).rpq_derivative(&d).map_err(e2s)?;
            let want = PolynomialExact::monomial(closed_form(pr, &p, &qq, n as i64), n - 1);
            ensure(dz == want, || format!("{pr}: ∂ z^{n} = {dz}"))?;
        }
        let df = sample.rpq_derivative(&d).map_err(e2s)?;
        let lhs = definite_integral_poly(&df, &a, &b, &d).map_err(e2s)?;
        ensure(lhs == sample.eval(&b) - sample.eval(&a), || format!("{pr}: fundamental theorem fails"))?;
    }
    let tol = ten_pow_neg(30);
    for (p, qq) in [(qi(1), q(1, 2)), (q(3, 4), q(1, 3)), (qi(2), qi(1))] {
        let d = DeformParams::js(p.clone(), qq.clone()).map_err(e2s)?;
        let exact = QuadratureSpec::new(d.clone(), None, Regime::RatioBelowOne).map_err(e2s)?;
        let trunc = QuadratureSpec::new(d.clone(), Some(200), Regime::RatioBelowOne).map_err(e2s)?;
        let x = q(5, 7);
        for n in 0..=8usize {
            let f = PolynomialExact::monomial(Q::one(), n);
            let want = pw(&x, n as i64 + 1) / closed_form(Preset::JagannathanSrinivasa, &p, &qq, n as i64 + 1);
            let got = jackson_sum_poly(&f, &x, &exact).map_err(e2s)?;
            ensure(got == want, || format!("closed-form node sum z^{n} at p={p}, q={qq}"))?;
            let approx = jackson_sum_poly(&f, &x, &trunc).map_err(e2s)?;
            let rel = ((&approx - &want) / &want).abs();
            ensure(rel <= tol, || format!("200-term node sum z^{n} at p={p}, q={qq}: relative error {rel}"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let d = DeformParams::js(qi(1), q(9, 25)).map_err(e2s)?;
    let mut fact = Q::one();
    for n in 0..=32i64 {
        if n > 0 {
            fact *= closed_form(Preset::JagannathanSrinivasa, &qi(1), &q(9, 25), n);
        }
        let g = gamma_rpq(&qi(n + 1), &d, DEFAULT_TRUNCATION).map_err(e2s)?;
        ensure(g.value == fact, || format!("Γ({}) ≠ [{n}]!", n + 1))?;
    }
    // [z] = (1 - (3/5)^(2z))/(1 - 9/25) at half-integers
    let bracket = |z: &Q| -> Q {
        let two_z = (z * qi(2)).to_integer();
        let k: i64 = two_z.try_into().unwrap();
        (Q::one() - pw(&q(3, 5), k)) / (Q::one() - q(9, 25))
    };
    let samples = rational_samples();
    ensure(samples.len() == 10, || "ten sample points expected".into())?;
    for z in &samples {
        let g0 = gamma_rpq(z, &d, DEFAULT_TRUNCATION).map_err(e2s)?;
        let g1 = gamma_rpq(&(z + Q::one()), &d, DEFAULT_TRUNCATION).map_err(e2s)?;
        ensure(!g0.exact && !g1.exact, || format!("Γ({z}) should come from the product"))?;
        let res = (&g1.value - bracket(z) * &g0.value).abs();
        let allowed = g1.value.abs() * (&g1.tail_bound + &g0.tail_bound) / (Q::one() - &g1.tail_bound);
        ensure(res <= allowed, || format!("Γ({z}+1) = [z]Γ({z}): residual {res} exceeds {allowed}"))?;
    }
    let beta = |x: i64, y: i64| -> Q {
        closed_factorial(Preset::JagannathanSrinivasa, &qi(1), &q(9, 25), x - 1)
            * closed_factorial(Preset::JagannathanSrinivasa, &qi(1), &q(9, 25), y - 1)
            / closed_factorial(Preset::JagannathanSrinivasa, &qi(1), &q(9, 25), x + y - 1)
    };
    let num = |n: i64| closed_form(Preset::JagannathanSrinivasa, &qi(1), &q(9, 25), n);
    for (x, y) in [(1i64, 1i64), (2, 3), (4, 1), (3, 5), (6, 2)] {
        let lib = gammabeta::beta_rpq(&qi(x), &qi(y), &d, DEFAULT_TRUNCATION).map_err(e2s)?;
        ensure(lib.value == beta(x, y) && lib.exact, || format!("β({x},{y})"))?;
        let b = beta(x, y);
        let lb = |a: i64, c: i64| gammabeta::beta_rpq(&qi(a), &qi(c), &d, DEFAULT_TRUNCATION).map(|v| v.value).map_err(e2s);
        ensure(lb(x, y + 1)? == num(y) / num(x + y) * &b, || format!("(i) at ({x},{y})"))?;
        ensure(lb(x + 1, y)? == num(x) / num(x + y) * &b, || format!("(ii) at ({x},{y})"))?;
        ensure(lb(x + 1, y)? == num(x) / num(y) * lb(x, y + 1)?, || format!("(iii) at ({x},{y})"))?;
        ensure(
            lb(x + 1, y + 1)? == num(x) * num(y) / (num(x + y + 1) * num(x + y)) * &b,
            || format!("(vi) at ({x},{y})"),
        )?;
    }
    let r = gammabeta::suite(&DeformParams::js(qi(1), q(1, 2)).map_err(e2s)?, false).map_err(e2s)?;
    ensure(r.all_passed(), || format!("gammabeta suite: {:?}", r.first_failure()))
}

fn criterion_4() -> Outcome {
    let cl = DeformParams::classical();
    let b = series::generating_polynomials(&cl, PolyFamily::Bernoulli, &Q::zero(), 8, Family::Lower).map_err(e2s)?;
    let literal = [q(1, 1), q(-1, 2), q(1, 6), qi(0), q(-1, 30), qi(0), q(1, 42), qi(0), q(-1, 30)];
    ensure(b == literal, || format!("B_0..B_8 = {b:?}"))?;
    ensure(b == bernoulli_recurrence(8), || "Bernoulli recurrence oracle".into())?;
    let a = series::zigzag_numbers(&cl, 8).map_err(e2s)?;
    let brute: Vec<Q> = (0..8).map(|n| qi(alternating_permutations(n) as i64)).collect();
    ensure(a == brute, || format!("A_0..A_7 = {a:?}, brute force {brute:?}"))?;
    let want: Vec<Q> = [1, 1, 1, 2, 5, 16, 61, 272].iter().map(|&k| qi(k)).collect();
    ensure(a == want, || "zigzag literals".into())?;
    for (pr, p, qq) in preset_params() {
        let d = DeformParams::new(pr, p, qq).map_err(e2s)?;
        let x = q(2, 5);
        let e = series::generating_polynomials(&d, PolyFamily::Euler, &x, 16, Family::Lower).map_err(e2s)?;
        let g = series::generating_polynomials(&d, PolyFamily::Genocchi, &x, 17, Family::Lower).map_err(e2s)?;
        for n in 0..=16usize {
            let lhs = &g[n + 1];
            let rhs = d.number(n as i64 + 1).map_err(e2s)? * &e[n];
            ensure(*lhs == rhs, || format!("{pr}: G_{} ≠ [{}]E_{n}", n + 1, n + 1))?;
        }
    }
    Ok(())
}

fn twist(p: u64) -> (Q, Q) {
    (qi(1 + p as i64), qi(1 + 2 * p as i64))
}

fn criterion_5() -> Outcome {
    let n_dig = 16u32;
    for p in [3u64, 5, 7] {
        let (rho, qq) = twist(p);
        let tw = TwistParams::new(p, &rho, &qq, n_dig).map_err(e2s)?;
        let cl = TwistParams::classical(p, n_dig).map_err(e2s)?;
        let work = n_dig + padicfun::GUARD;
        let pad = |x: &Q| PadicNumber::from_rational(x, p, work).map_err(e2s);
        for t in [&tw, &cl] {
            let g0 = padicfun::padic_gamma_rpq(0, t).map_err(e2s)?;
            let g1 = padicfun::padic_gamma_rpq(1, t).map_err(e2s)?;
            ensure(agree(&g0, &pad(&qi(1))?, n_dig).map_err(e2s)?, || format!("Γ(0) at p={p}"))?;
            ensure(agree(&g1, &pad(&qi(-1))?, n_dig).map_err(e2s)?, || format!("Γ(1) at p={p}"))?;
            for x in 0..20 {
                let g = padicfun::padic_gamma_rpq(x, t).map_err(e2s)?;
                ensure(g.valuation() == Some(0), || format!("|Γ({x})|_p ≠ 1 at p={p}"))?;
            }
        }
        // independent rational evaluation of the twisted and classical gamma
        let pi = p as i64;
        let mut tw_prod = Q::one();
        for n in 0..=30i64 {
            if n >= 2 && (n - 1) % pi != 0 {
                tw_prod *= closed_form(Preset::JagannathanSrinivasa, &rho, &qq, n - 1);
            }
            let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
            let g = padicfun::padic_gamma_rpq(n, &tw).map_err(e2s)?;
            ensure(agree(&g, &pad(&(sign * &tw_prod))?, n_dig).map_err(e2s)?, || format!("twisted Γ({n}) at p={p}"))?;
            let g = padicfun::padic_gamma_rpq(n, &cl).map_err(e2s)?;
            ensure(agree(&g, &pad(&morita_gamma(n, pi))?, n_dig).map_err(e2s)?, || format!("Morita Γ({n}) at p={p}"))?;
        }
        for z in -pi..=30 {
            for t in [&tw, &cl] {
                let lhs = padicfun::padic_gamma_rpq(z + 1, t).map_err(e2s)?;
                let d = if z % pi != 0 {
                    let br = if t.is_classical() { qi(z) } else { closed_form(Preset::JagannathanSrinivasa, &rho, &qq, z) };
                    -br
                } else {
                    -Q::one()
                };
                let rhs = pad(&d)?.mul(&padicfun::padic_gamma_rpq(z, t).map_err(e2s)?).map_err(e2s)?;
                ensure(agree(&lhs, &rhs, n_dig).map_err(e2s)?, || format!("Γ({z}+1) = δΓ({z}) at p={p}"))?;
            }
        }
        for n in 1..=30i64 {
            for t in [&tw, &cl] {
                let r = padicfun::factorial_decomposition_check(n, t).map_err(e2s)?;
                ensure(r.all_passed(), || format!("decomposition n={n} p={p}: {:?}", r.first_failure()))?;
            }
        }
        for t in [&tw, &cl] {
            for level in [1u32, 2] {
                let coarse = padicfun::VolkenbornLevel::new(level, t).map_err(e2s)?;
                let fine = padicfun::VolkenbornLevel::new(level + 1, t).map_err(e2s)?;
                let pn = pi.pow(level);
                for a in 0..pn {
                    let mut s = PadicNumber::zero(p, work);
                    for i in 0..pi {
                        s = s.add(&padicfun::volkenborn_measure(a + i * pn, &fine, t).map_err(e2s)?).map_err(e2s)?;
                    }
                    let m = padicfun::volkenborn_measure(a, &coarse, t).map_err(e2s)?;
                    ensure(agree(&s, &m, n_dig).map_err(e2s)?, || format!("distribution relation a={a} N={level} p={p}"))?;
                }
            }
        }
        let levels = padicfun::default_levels();
        ensure(levels.len() == 6, || "six levels expected".into())?;
        let one = |_: i64| Ok(cl.int(1));
        let b0 = padicfun::volkenborn_integral(&one, &levels, &cl).map_err(e2s)?;
        ensure(agree(&b0.value, &pad(&qi(1))?, n_dig).map_err(e2s)?, || format!("B_0 at p={p}"))?;
        let id = |x: i64| Ok(cl.int(x));
        let b1 = padicfun::volkenborn_integral(&id, &levels, &cl).map_err(e2s)?;
        let inc = b1.diff_valuations.len() == 5
            && b1.diff_valuations.windows(2).all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b > a));
        ensure(inc, || format!("B_1 difference valuations {:?} at p={p}", b1.diff_valuations))?;
        let digits = b1.certified_digits().unwrap_or(0).max(0) as u32;
        ensure(digits >= 5, || format!("only {digits} certified digits for B_1 at p={p}"))?;
        ensure(agree(&b1.value, &pad(&q(-1, 2))?, digits).map_err(e2s)?, || format!("B_1 at p={p}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for p in [3u64, 5, 7] {
        let n = 12u32;
        for h in [qi(1), qi(p as i64), q(1, 2)] {
            let g = spinzeta::spin_generators(&h, p, n).map_err(e2s)?;
            let hp = PadicNumber::from_rational(&h, p, n).map_err(e2s)?;
            let c = |a: &Mat2Padic, b: &Mat2Padic| spinzeta::commutator(a, b).map_err(e2s);
            let sc = |m: &Mat2Padic, k: i64| m.scale(&hp.mul_i64(k).map_err(e2s)?).map_err(e2s);
            ensure(c(&g.z, &g.plus)? == sc(&g.plus, 1)?, || format!("[S_z,S+] at p={p}, ħ={h}"))?;
            ensure(c(&g.z, &g.minus)? == sc(&g.minus, -1)?, || format!("[S_z,S-] at p={p}, ħ={h}"))?;
            ensure(c(&g.plus, &g.minus)? == sc(&g.z, 2)?, || format!("[S+,S-] at p={p}, ħ={h}"))?;
        }
        let g = spinzeta::spin_generators(&qi(1), p, n).map_err(e2s)?;
        for k in 1..=3u32 {
            let t = PadicNumber::from_i64((p as i64).pow(k), p, n).map_err(e2s)?;
            for s in [&g.z, &g.plus, &g.minus] {
                let e = spinzeta::mat_exp(s, &t).map_err(e2s)?;
                let back = spinzeta::mat_log(&e).map_err(e2s)?;
                ensure(back.eq_to_precision(&s.scale(&t).map_err(e2s)?).map_err(e2s)?, || format!("log exp at p={p}, t=p^{k}"))?;
                let one = PadicNumber::one(p, n);
                ensure(e.det().map_err(e2s)?.eq_to_precision(&one).map_err(e2s)?, || format!("det exp at p={p}"))?;
                ensure(spinzeta::congruence_level(&e) >= k, || format!("level of exp at p={p}, t=p^{k}"))?;
            }
        }
    }
    let mut pairs = 0;
    for p in [2i64, 3, 5, 7, 11] {
        for s in [2i64, 3, 4, 6] {
            let v = spinzeta::zeta_spin_half(p as u64, &qi(s)).map_err(e2s)?.exact;
            let o = zeta_spin_oracle(p, s);
            ensure(v == o, || format!("ζ_spin at p={p}, s={s}: {v} vs oracle {o}"))?;
            pairs += 1;
        }
    }
    ensure(pairs == 20, || "twenty (p,s) pairs expected".into())?;
    for l in 1..=5i64 {
        let hand = [
            (GhostGroup::GoOdd, [0, 3, 8, 15, 24]),
            (GhostGroup::Gsp, [-1, 1, 4, 8, 13]),
            (GhostGroup::GoEvenPlus, [-2, -1, 1, 4, 8]),
        ];
        for (grp, vals) in hand {
            let v = spinzeta::ghost_boundary(grp, l).map_err(e2s)?;
            ensure(v == qi(vals[l as usize - 1]), || format!("ghost boundary {grp:?} l={l}"))?;
        }
    }
    Ok(())
}

fn rpq(args: &[&str]) -> Result<(i32, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rpq")).args(args).output().map_err(e2s)?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    ))
}

fn criterion_7() -> Outcome {
    let (code, out, err) = rpq(&["check", "--all", "--format", "json"])?;
    ensure(code == 0, || format!("check --all exited {code}: {err}"))?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(e2s)?;
    ensure(v["passed"] == serde_json::Value::Bool(true), || "check --all reported failures".into())?;
    let (code, _, err) = rpq(&["check", "--module", "gammabeta", "--classical-limit"])?;
    ensure(code == 0, || format!("classical gammabeta check exited {code}: {err}"))?;
    let dir = tempfile::tempdir().map_err(e2s)?;
    let grids: [(&str, Vec<&str>); 3] = [
        ("numbers.csv", vec!["table", "numbers", "--preset", "js", "-p", "3/2", "-q", "1/3", "--from", "0", "--to", "20"]),
        ("bernoulli.json", vec!["table", "family", "--family", "bernoulli", "--from", "0", "--to", "10", "--format", "json"]),
        ("zeta.csv", vec!["zeta", "table", "--primes", "2,3,5,7", "--s-from", "2", "--s-to", "6"]),
    ];
    for (name, args) in grids {
        let path = dir.path().join(name);
        let path_s = path.to_string_lossy().into_owned();
        let mut a = args.clone();
        a.extend(["--out", &path_s]);
        let (code, _, err) = rpq(&a)?;
        ensure(code == 0, || format!("{name}: emit exited {code}: {err}"))?;
        let (code, out, err) = rpq(&["table", "--verify", &path_s])?;
        ensure(code == 0, || format!("{name}: verify exited {code}: {err}"))?;
        ensure(out.contains("\"round_trip\": true"), || format!("{name}: {out}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("1 deformation core", criterion_1, Duration::from_secs(1)),
        ("2 calculus", criterion_2, Duration::from_secs(5)),
        ("3 special functions", criterion_3, Duration::from_secs(10)),
        ("4 polynomial families", criterion_4, Duration::from_secs(5)),
        ("5 p-adic suite", criterion_5, Duration::from_secs(60)),
        ("6 spin/zeta", criterion_6, Duration::from_secs(5)),
        ("7 CLI", criterion_7, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let line = match (&res, el <= limit) {
            (Ok(()), true) => format!("PASS criterion {name} ({:.2} s, limit {} s)", el.as_secs_f64(), limit.as_secs()),
            (Ok(()), false) => {
                format!("FAIL criterion {name}: runtime {:.2} s exceeds {} s", el.as_secs_f64(), limit.as_secs())
            }
            (Err(m), _) => format!("FAIL criterion {name}: {m} ({:.2} s)", el.as_secs_f64()),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
