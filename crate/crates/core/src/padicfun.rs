//! p-adic deformed factorial, gamma and beta; the deformed Volkenborn
//! distribution and integral; Carlitz-type Bernoulli values; the fermionic
//! integral.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{PadicNumber, Q};
use crate::deform::{DeformParams, Preset, StructureFunction};
use crate::error::{Error, Result};
use crate::report::Report;

/// Digits carried beyond the requested precision.
pub const GUARD: u32 = 16;
pub const DEFAULT_LEVELS: u32 = 6;
/// Trailing differences that must grow strictly in valuation.
pub const CERT_WINDOW: usize = 3;
/// Largest residue count used by the Carlitz checks in the suite.
const CARLITZ_POINTS: u128 = 3125;

/// Twist data `(p, ρ, q)` for the p-adic functions.
#[derive(Clone, Debug)]
pub struct TwistParams {
    prime: u64,
    rho: PadicNumber,
    q: PadicNumber,
    structure: StructureFunction,
    precision: u32,
    classical: bool,
    kappa: PadicNumber,
}

fn unit_disc(x: &PadicNumber, name: &str) -> Result<()> {
    let one = PadicNumber::one(x.prime(), x.precision());
    match x.sub(&one)?.valuation() {
        None => Err(Error::InvalidParameter(format!("{name} must differ from 1"))),
        Some(v) if v < 1 => Err(Error::ConvergenceDomain(format!("|{name} - 1|_p < 1 fails: v({name} - 1) = {v}"))),
        Some(_) => Ok(()),
    }
}

impl TwistParams {
    /// JS-type twist with rational `ρ, q`; `precision` is the number of digits checked.
    pub fn new(prime: u64, rho: &Q, q: &Q, precision: u32) -> Result<Self> {
        let work = precision + GUARD;
        let rho = PadicNumber::from_rational(rho, prime, work)?;
        let q = PadicNumber::from_rational(q, prime, work)?;
        Self::from_padic(rho, q, precision)
    }

    pub fn from_padic(rho: PadicNumber, q: PadicNumber, precision: u32) -> Result<Self> {
        if rho.prime() != q.prime() {
            return Err(Error::InvalidParameter("ρ and q use different primes".into()));
        }
        if precision == 0 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        unit_disc(&rho, "ρ")?;
        unit_disc(&q, "q")?;
        let prime = rho.prime();
        let work = precision + GUARD;
        Ok(TwistParams {
            prime,
            rho: rho.with_precision(work),
            q: q.with_precision(work),
            structure: Preset::JagannathanSrinivasa.into(),
            precision,
            classical: false,
            kappa: PadicNumber::one(prime, work),
        })
    }

    /// The limit `ρ, q → 1`: `[n] = n`, Haar-type measure `1/p^N`.
    pub fn classical(prime: u64, precision: u32) -> Result<Self> {
        crate::arith::require_prime(prime)?;
        let one = PadicNumber::one(prime, precision + GUARD);
        Ok(TwistParams {
            prime,
            rho: one.clone(),
            q: one.clone(),
            structure: Preset::JagannathanSrinivasa.into(),
            precision,
            classical: true,
            kappa: one,
        })
    }

    pub fn with_structure(mut self, s: StructureFunction) -> Self {
        self.structure = s;
        self
    }

    /// Scalar factor on the measure, `1` by default.
    pub fn with_kappa(mut self, kappa: PadicNumber) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
    pub fn rho(&self) -> &PadicNumber {
        &self.rho
    }
    pub fn q(&self) -> &PadicNumber {
        &self.q
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn is_classical(&self) -> bool {
        self.classical
    }
    pub fn structure(&self) -> &StructureFunction {
        &self.structure
    }
    fn work(&self) -> u32 {
        self.precision + GUARD
    }

    pub fn int(&self, n: i64) -> PadicNumber {
        PadicNumber::from_i64(n, self.prime, self.work()).expect("prime checked on construction")
    }

    pub fn deform(&self) -> DeformParams<PadicNumber> {
        DeformParams::unchecked(self.structure.clone(), self.rho.clone(), self.q.clone(), self.rho.clone(), self.q.clone())
    }

    /// `[n]_{R(ρ,q)}`; `n` in the classical limit.
    pub fn number(&self, n: i64) -> Result<PadicNumber> {
        if self.classical {
            return Ok(self.int(n));
        }
        self.deform().number(n)
    }

    /// `(ρ^k, q^k)` with the same structure.
    pub fn powered(&self, k: i64) -> Result<Self> {
        Ok(TwistParams { rho: self.rho.pow_int(k)?, q: self.q.pow_int(k)?, ..self.clone() })
    }

    /// `|ρ - 1|_p, |q - 1|_p < p^(-1/(p-1))`, needed for `ρ^x, q^x` on `Z_p`.
    pub fn require_volkenborn(&self) -> Result<()> {
        if self.classical {
            return Ok(());
        }
        for (x, name) in [(&self.rho, "ρ"), (&self.q, "q")] {
            let v = x.sub(&PadicNumber::one(self.prime, self.work()))?.valuation().unwrap_or(i64::MAX);
            if !crate::arith::padic::above_exp_radius(v, self.prime) {
                return Err(Error::ConvergenceDomain(format!(
                    "|{name} - 1|_p < p^(-1/(p-1)) fails: v({name} - 1) = {v}"
                )));
            }
        }
        Ok(())
    }
}

/// `v(a - b) >= min(v(a), v(b)) + n`, with both inputs carrying `n` digits.
pub fn agree(a: &PadicNumber, b: &PadicNumber, n: u32) -> Result<bool> {
    if a.is_zero() && b.is_zero() {
        return Ok(true);
    }
    let va = a.valuation().unwrap_or(i64::MAX).min(b.valuation().unwrap_or(i64::MAX));
    let enough = |x: &PadicNumber| x.is_zero() || x.precision() >= n;
    if !enough(a) || !enough(b) {
        return Ok(false);
    }
    Ok(match a.sub(b)?.valuation() {
        None => true,
        Some(v) => v >= va + n as i64,
    })
}

fn push_agree(r: &mut Report, name: impl Into<String>, a: &PadicNumber, b: &PadicNumber, n: u32, assert: bool) -> Result<()> {
    let ok = agree(a, b, n)?;
    let res = a.sub(b)?;
    let res = match res.valuation() {
        None => "0".to_string(),
        Some(v) => format!("valuation {v}"),
    };
    if assert {
        r.push(name, ok, a, b, res);
    } else {
        r.measure(name, a, b, res);
    }
    Ok(())
}

/// `Π_{j<n, p∤j} [j]_{R(ρ,q)}`.
pub fn padic_factorial_rpq(n: i64, tw: &TwistParams) -> Result<PadicNumber> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!("factorial of negative n = {n}")));
    }
    let p = tw.prime as i64;
    let mut acc = tw.int(1);
    for j in 1..n {
        if j % p != 0 {
            acc = acc.mul(&tw.number(j)?)?;
        }
    }
    Ok(acc)
}

/// `-[z]` when `p ∤ z`, `-1` otherwise.
pub fn delta_factor(z: i64, tw: &TwistParams) -> Result<PadicNumber> {
    if z % tw.prime as i64 != 0 {
        Ok(tw.number(z)?.neg())
    } else {
        Ok(tw.int(-1))
    }
}

/// `Γ^p(n) = (-1)^n (n!)^p`; non-positive `n` through `Γ(n) = Γ(n+1)/δ(n)`.
pub fn padic_gamma_rpq(n: i64, tw: &TwistParams) -> Result<PadicNumber> {
    if n >= 0 {
        let f = padic_factorial_rpq(n, tw)?;
        return Ok(if n % 2 == 0 { f } else { f.neg() });
    }
    let mut g = padic_gamma_rpq(0, tw)?;
    for z in (n..0).rev() {
        g = g.div(&delta_factor(z, tw)?)?;
    }
    Ok(g)
}

/// Values at the digit truncations `x mod p^k` of a p-adic integer.
#[derive(Clone, Debug, Serialize)]
pub struct GammaLimit {
    pub truncations: Vec<u64>,
    pub values: Vec<PadicNumber>,
    /// `v(Γ(x_{k+1}) - Γ(x_k))`; `None` for an exact zero difference.
    pub diff_valuations: Vec<Option<i64>>,
}

pub fn padic_gamma_limit(x: &PadicNumber, tw: &TwistParams, levels: u32) -> Result<GammaLimit> {
    if x.valuation().unwrap_or(0) < 0 {
        return Err(Error::InvalidParameter("argument must lie in Z_p".into()));
    }
    let digits = {
        let mut d = vec![0u64; x.valuation().unwrap_or(0).max(0) as usize];
        d.extend(x.digits());
        d
    };
    let p = tw.prime;
    let mut truncations = Vec::new();
    let mut values = Vec::new();
    let mut n = 0u64;
    let mut pk = 1u64;
    for k in 0..levels as usize {
        n += digits.get(k).copied().unwrap_or(0) * pk;
        pk = pk.checked_mul(p).ok_or_else(|| Error::InvalidParameter("too many levels".into()))?;
        truncations.push(n);
        values.push(padic_gamma_rpq(n as i64, tw)?);
    }
    let diff_valuations = values.windows(2).map(|w| w[1].sub(&w[0]).map(|d| d.valuation())).collect::<Result<_>>()?;
    Ok(GammaLimit { truncations, values, diff_valuations })
}

fn floor_levels(n: i64, p: i64) -> Vec<i64> {
    let mut out = vec![n];
    let mut m = n / p;
    while m > 0 {
        out.push(m);
        m /= p;
    }
    out
}

fn digit_sum(n: i64, p: i64) -> i64 {
    let (mut s, mut m) = (0, n);
    while m > 0 {
        s += m % p;
        m /= p;
    }
    s
}

/// `[m]_{R(ρ,q)}!` over all `j <= m`.
fn full_factorial(m: i64, tw: &TwistParams) -> Result<PadicNumber> {
    let mut acc = tw.int(1);
    for j in 1..=m {
        acc = acc.mul(&tw.number(j)?)?;
    }
    Ok(acc)
}

/// `Π_{k<=m} (ρ^k - q^k)/(ρ^(kp) - q^(kp))`, or `p^(-m)` in the classical limit.
fn product_ratio(m: i64, tw: &TwistParams) -> Result<PadicNumber> {
    let p = tw.prime as i64;
    if tw.classical {
        return tw.int(p).pow_int(-m);
    }
    let mut acc = tw.int(1);
    for k in 1..=m {
        let a = tw.rho.pow_int(k)?.sub(&tw.q.pow_int(k)?)?;
        let b = tw.rho.pow_int(k * p)?.sub(&tw.q.pow_int(k * p)?)?;
        acc = acc.mul(&a.div(&b)?)?;
    }
    Ok(acc)
}

/// `(-1)^(n + (n - s_n)/(p-1) + m + 1) Π_i Γ(n_i + 1) / Π_{i>=1} P(n_i)` with
/// `n_i = ⌊n/p^i⌋` and `P` the product ratio.
fn digit_sum_rhs(n: i64, tw: &TwistParams) -> Result<PadicNumber> {
    let p = tw.prime as i64;
    let ns = floor_levels(n, p);
    let m = ns.len() as i64 - 1;
    let e = n + (n - digit_sum(n, p)) / (p - 1) + m + 1;
    let mut acc = tw.int(if e % 2 == 0 { 1 } else { -1 });
    for (i, &ni) in ns.iter().enumerate() {
        acc = acc.mul(&padic_gamma_rpq(ni + 1, tw)?)?;
        if i >= 1 {
            acc = acc.div(&product_ratio(ni, tw)?)?;
        }
    }
    Ok(acc)
}

/// Factorial decomposition, digit-sum form, product ratio and product rule at `n`.
///
/// Asserted for JS-type structures and the classical limit; measured otherwise.
pub fn factorial_decomposition_check(n: i64, tw: &TwistParams) -> Result<Report> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let mut r = Report::new(format!("factorial_decomposition n={n} p={}", tw.prime));
    let assert = tw.structure.is_js();
    let digits = tw.precision;
    let p = tw.prime as i64;
    let np = n / p;
    let twp = tw.powered(p)?;
    let pnum = tw.number(p)?;

    let lhs = padic_gamma_rpq(n + 1, tw)?;
    let sign = tw.int(if (n + 1) % 2 == 0 { 1 } else { -1 });
    let fp = if tw.classical { full_factorial(np, tw)? } else { full_factorial(np, &twp)? };
    let rhs = sign.mul(&full_factorial(n, tw)?)?.div(&pnum.pow_int(np)?.mul(&fp)?)?;
    push_agree(&mut r, "Γ(n+1) = (-1)^(n+1)[n]!/([p]^⌊n/p⌋ [⌊n/p⌋]_(ρ^p,q^p)!)", &lhs, &rhs, digits, assert)?;

    for j in 0..3u32 {
        let nj = n / p.pow(j);
        if nj == 0 {
            break;
        }
        let fpj = if tw.classical { full_factorial(nj, tw)? } else { full_factorial(nj, &twp)? };
        let lhs = full_factorial(nj, tw)?.div(&pnum.pow_int(nj)?.mul(&fpj)?)?;
        push_agree(
            &mut r,
            format!("[⌊n/p^{j}⌋]!/([p]^⌊n/p^{j}⌋ [⌊n/p^{j}⌋]_(ρ^p,q^p)!) = Π(ρ^k-q^k)/(ρ^kp-q^kp)"),
            &lhs,
            &product_ratio(nj, tw)?,
            digits,
            assert,
        )?;
    }

    push_agree(&mut r, "digit-sum form of [n]!", &full_factorial(n, tw)?, &digit_sum_rhs(n, tw)?, digits, assert)?;
    if np >= 1 {
        let lhs = if tw.classical { full_factorial(np, tw)? } else { full_factorial(np, &twp)? };
        let rhs = digit_sum_rhs(np, tw)?.div(&pnum.pow_int(np)?.mul(&product_ratio(np, tw)?)?)?;
        push_agree(&mut r, "digit-sum form of [⌊n/p⌋]_(ρ^p,q^p)!", &lhs, &rhs, digits, assert)?;
    }

    for k in 1..=np.clamp(1, 3) {
        let lhs = tw.number(k * p)?;
        let kp = if tw.classical { tw.int(k) } else { twp.number(k)? };
        push_agree(&mut r, format!("[{k}p] = [{k}]_(ρ^p,q^p)[p]_(ρ,q)"), &lhs, &kp.mul(&pnum)?, digits, assert)?;
    }
    Ok(r)
}

/// Residue-class weights at depth `N`: `μ(a + p^N Z_p) = κ ρ^(p^N) (q/ρ)^a / [p^N]`.
#[derive(Clone, Debug)]
pub struct VolkenbornLevel {
    level: u32,
    weights: Vec<PadicNumber>,
}

/// `c_N` with `μ(a + p^N Z_p) = c_N (q/ρ)^a`: `κ ρ^P / [P]`, or `κ / P` classically, `P = p^N`.
fn level_constant(level: u32, tw: &TwistParams) -> Result<PadicNumber> {
    let size = (tw.prime as i64)
        .checked_pow(level)
        .ok_or_else(|| Error::InvalidParameter(format!("level {level} is too deep")))?;
    let work = tw.work() + level;
    if tw.classical {
        let inv = Q::new(1.into(), size.into());
        return PadicNumber::from_rational(&inv, tw.prime, work)?.mul(&tw.kappa);
    }
    let rho = tw.rho.with_precision(work);
    // JS: [P] = ρ^(P-1) Σ_{a<P} (q/ρ)^a = (ρ^P - q^P)/(ρ - q)
    let pn = if tw.structure.is_js() {
        let w = tw.q.div(&tw.rho)?.with_precision(work);
        let one = PadicNumber::one(tw.prime, work);
        let geo = if w.sub(&one)?.is_zero() {
            PadicNumber::from_i64(size, tw.prime, work)?
        } else {
            one.sub(&w.pow_int(size)?)?.div(&one.sub(&w)?)?
        };
        rho.pow_int(size - 1)?.mul(&geo)?
    } else {
        tw.number(size)?
    };
    rho.pow_int(size)?.div(&pn)?.mul(&tw.kappa)
}

impl VolkenbornLevel {
    pub fn new(level: u32, tw: &TwistParams) -> Result<Self> {
        tw.require_volkenborn()?;
        let size = (tw.prime as usize)
            .checked_pow(level)
            .filter(|&s| s <= 50_000_000)
            .ok_or_else(|| Error::InvalidParameter(format!("level {level} is too deep")))?;
        let work = tw.work() + level;
        if tw.classical {
            let w = PadicNumber::from_rational(&Q::new(1.into(), num_traits::pow(num_bigint::BigInt::from(tw.prime), level as usize)), tw.prime, work)?
                .mul(&tw.kappa)?;
            return Ok(VolkenbornLevel { level, weights: vec![w; size] });
        }
        let rho = tw.rho.with_precision(work);
        let w = tw.q.div(&tw.rho)?;
        let mut powers = Vec::with_capacity(size);
        let mut cur = PadicNumber::one(tw.prime, work);
        let mut sum = PadicNumber::zero(tw.prime, work);
        for _ in 0..size {
            sum = sum.add(&cur)?;
            powers.push(cur.clone());
            cur = cur.mul(&w)?;
        }
        // JS: [P] = ρ^(P-1) Σ_{a<P} (q/ρ)^a
        let pn = if tw.structure.is_js() { rho.pow_int(size as i64 - 1)?.mul(&sum)? } else { tw.number(size as i64)? };
        let c = rho.pow_int(size as i64)?.div(&pn)?.mul(&tw.kappa)?;
        let weights = powers.iter().map(|x| x.mul(&c)).collect::<Result<_>>()?;
        Ok(VolkenbornLevel { level, weights })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weights(&self) -> &[PadicNumber] {
        &self.weights
    }
}

/// `μ(a + p^N Z_p)` for `0 <= a < p^N`.
pub fn volkenborn_measure(a: i64, level: &VolkenbornLevel, tw: &TwistParams) -> Result<PadicNumber> {
    tw.require_volkenborn()?;
    usize::try_from(a)
        .ok()
        .and_then(|i| level.weights.get(i))
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("residue {a} outside 0..p^{}", level.level)))
}

/// Riemann sums by level with the successive-difference certificate.
#[derive(Clone, Debug, Serialize)]
pub struct VolkenbornResult {
    pub value: PadicNumber,
    pub levels: Vec<u32>,
    pub sums: Vec<PadicNumber>,
    /// `None` marks an exact zero difference.
    pub diff_valuations: Vec<Option<i64>>,
}

impl VolkenbornResult {
    /// Digits certified by the last difference.
    pub fn certified_digits(&self) -> Option<i64> {
        let v0 = self.value.valuation()?;
        match self.diff_valuations.last()? {
            None => Some(self.value.precision() as i64),
            Some(v) => Some(v - v0),
        }
    }
}

fn strictly_increasing(vals: &[Option<i64>]) -> bool {
    vals.windows(2).all(|w| match (w[0], w[1]) {
        (None, None) => true,
        (None, Some(_)) => false,
        (Some(_), None) => true,
        (Some(a), Some(b)) => b > a,
    })
}

/// Riemann sums `Σ_{x<p^N} f(x) μ(x + p^N Z_p)` over `levels`; errors with
/// `NoConvergence` unless the last `CERT_WINDOW` difference valuations strictly increase.
pub fn volkenborn_integral(
    f: &dyn Fn(i64) -> Result<PadicNumber>,
    levels: &[u32],
    tw: &TwistParams,
) -> Result<VolkenbornResult> {
    tw.require_volkenborn()?;
    if levels.is_empty() || levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("levels must be a non-empty increasing sequence".into()));
    }
    let max_level = *levels.last().unwrap();
    let size = (tw.prime as i64)
        .checked_pow(max_level)
        .filter(|&s| s <= 50_000_000)
        .ok_or_else(|| Error::InvalidParameter(format!("level {max_level} is too deep")))?;
    let work = tw.work() + max_level;
    // μ(x + p^N) = c_N w^x, so every level sum is c_N times a prefix of Σ f(x) w^x
    let w = if tw.classical { None } else { Some(tw.q.div(&tw.rho)?.with_precision(work)) };
    let mut wx = PadicNumber::one(tw.prime, work);
    let mut acc = PadicNumber::zero(tw.prime, work);
    let mut sums = Vec::new();
    let mut next = levels.iter().peekable();
    for x in 0..size {
        let fx = f(x)?;
        acc = match &w {
            None => acc.add(&fx)?,
            Some(w) => {
                let t = acc.add(&fx.mul(&wx)?)?;
                wx = wx.mul(w)?;
                t
            }
        };
        while let Some(&&n) = next.peek() {
            if x + 1 == (tw.prime as i64).pow(n) {
                sums.push(acc.mul(&level_constant(n, tw)?)?);
                next.next();
            } else {
                break;
            }
        }
    }
    let diff_valuations: Vec<Option<i64>> =
        sums.windows(2).map(|w| w[1].sub(&w[0]).map(|d| d.valuation())).collect::<Result<_>>()?;
    let res = VolkenbornResult { value: sums.last().unwrap().clone(), levels: levels.to_vec(), sums, diff_valuations };
    let tail = &res.diff_valuations[res.diff_valuations.len().saturating_sub(CERT_WINDOW)..];
    if !strictly_increasing(tail) {
        return Err(Error::NoConvergence(format!(
            "Riemann sums do not stabilize: difference valuations {:?}",
            res.diff_valuations
        )));
    }
    Ok(res)
}

pub fn default_levels() -> Vec<u32> {
    (1..=DEFAULT_LEVELS).collect()
}

/// `q I(f_1) - ρ I(f)` for `f(x) = x` against `ρ (q - ρ)(f(0) + f'(0)/(log q - log ρ))`,
/// which is `ρ² f'(0)` at `ρ = q` and `f'(0)` in the classical limit.
pub fn shift_identity(levels: &[u32], tw: &TwistParams) -> Result<(PadicNumber, PadicNumber, Option<i64>)> {
    let f = |x: i64| Ok(tw.int(x));
    let f1 = |x: i64| Ok(tw.int(x + 1));
    let i0 = volkenborn_integral(&f, levels, tw)?;
    let i1 = volkenborn_integral(&f1, levels, tw)?;
    let (f0, df0) = (tw.int(0), tw.int(1));
    let (lhs, rhs) = if tw.classical {
        (i1.value.sub(&i0.value)?, df0)
    } else {
        let lhs = tw.q.mul(&i1.value)?.sub(&tw.rho.mul(&i0.value)?)?;
        let d = tw.q.sub(&tw.rho)?;
        let rhs = if d.is_zero() {
            tw.rho.mul(&tw.rho)?.mul(&df0)?
        } else {
            let dl = tw.q.log()?.sub(&tw.rho.log()?)?;
            tw.rho.mul(&d)?.mul(&f0.add(&df0.div(&dl)?)?)?
        };
        (lhs, rhs)
    };
    let digits = i0.certified_digits().into_iter().chain(i1.certified_digits()).min();
    Ok((lhs, rhs, digits))
}

/// The two evaluations of `B_{n;a}(x)`.
#[derive(Clone, Debug, Serialize)]
pub struct CarlitzValue {
    pub direct: PadicNumber,
    pub binomial: PadicNumber,
    /// Digits certified by the level sums of every integral involved.
    pub certified_digits: i64,
}

struct Powers {
    rho_x: PadicNumber,
    q_x: PadicNumber,
    rho_a: PadicNumber,
    bracket_x: PadicNumber,
}

fn bracket(rho_t: &PadicNumber, q_t: &PadicNumber, t: &PadicNumber, tw: &TwistParams) -> Result<PadicNumber> {
    if tw.classical {
        return Ok(t.clone());
    }
    let d = tw.rho.sub(&tw.q)?;
    if d.is_zero() {
        return t.mul(&rho_t.div(&tw.rho)?);
    }
    rho_t.sub(q_t)?.div(&d)
}

/// `B_{n;a}(x) = ∫ ρ^(at) [x+t]^n dμ(t)` directly and through
/// `Σ_r C(n,r) [x]^(n-r) q^(rx) ∫ ρ^((a+n-r)t) [t]^r dμ(t)`.
pub fn carlitz_bernoulli(n: u32, a: &Q, x: &PadicNumber, levels: &[u32], tw: &TwistParams) -> Result<CarlitzValue> {
    tw.require_volkenborn()?;
    if !tw.structure.is_js() {
        return Err(Error::InvalidParameter("Carlitz-type values need the JS structure".into()));
    }
    let x = x.with_precision(tw.work());
    let pw = if tw.classical {
        Powers { rho_x: tw.int(1), q_x: tw.int(1), rho_a: tw.int(1), bracket_x: x.clone() }
    } else {
        let rho_x = tw.rho.power(&x)?;
        let q_x = tw.q.power(&x)?;
        let a_p = PadicNumber::from_rational(a, tw.prime, tw.work())?;
        let rho_a = tw.rho.power(&a_p)?;
        let bracket_x = bracket(&rho_x, &q_x, &x, tw)?;
        Powers { rho_x, q_x, rho_a, bracket_x }
    };
    let mut digits = i64::MAX;
    let mut track = |r: &VolkenbornResult| {
        if let Some(d) = r.certified_digits() {
            digits = digits.min(d);
        }
    };

    let size = levels
        .last()
        .and_then(|&l| (tw.prime as usize).checked_pow(l))
        .filter(|&s| s <= 50_000_000)
        .ok_or_else(|| Error::InvalidParameter("levels must be a non-empty shallow sequence".into()))?;
    let table = |b: &PadicNumber| -> Result<Vec<PadicNumber>> {
        let mut v = Vec::with_capacity(size);
        let mut cur = tw.int(1);
        for _ in 0..size {
            v.push(cur.clone());
            cur = cur.mul(b)?;
        }
        Ok(v)
    };
    let (rho_pow, q_pow, rho_a_pow) = (table(&tw.rho)?, table(&tw.q)?, table(&pw.rho_a)?);
    let at = |v: &[PadicNumber], t: i64| v[t as usize].clone();

    let direct_f = |t: i64| -> Result<PadicNumber> {
        let tt = tw.int(t);
        let b = bracket(&pw.rho_x.mul(&at(&rho_pow, t))?, &pw.q_x.mul(&at(&q_pow, t))?, &x.add(&tt)?, tw)?;
        at(&rho_a_pow, t).mul(&b.pow_int(n as i64)?)
    };
    let direct = volkenborn_integral(&direct_f, levels, tw)?;
    track(&direct);

    let mut binomial = PadicNumber::zero(tw.prime, tw.work());
    let mut c = 1i64;
    for r in 0..=n {
        let e = n - r;
        let moment_f = |t: i64| -> Result<PadicNumber> {
            let rho_t = at(&rho_pow, t);
            let bt = bracket(&rho_t, &at(&q_pow, t), &tw.int(t), tw)?;
            at(&rho_a_pow, t).mul(&rho_t.pow_int(e as i64)?)?.mul(&bt.pow_int(r as i64)?)
        };
        let m = volkenborn_integral(&moment_f, levels, tw)?;
        track(&m);
        let term = tw.int(c).mul(&pw.bracket_x.pow_int(e as i64)?)?.mul(&pw.q_x.pow_int(r as i64)?)?.mul(&m.value)?;
        binomial = binomial.add(&term)?;
        c = c * (n - r) as i64 / (r as i64 + 1);
    }
    Ok(CarlitzValue { direct: direct.value, binomial, certified_digits: digits })
}

/// Alternating sums `Σ_{x<p^N} (-1)^x f(x)` for `N = 1..=level`.
#[derive(Clone, Debug, Serialize)]
pub struct FermionicResult {
    pub value: PadicNumber,
    pub sums: Vec<PadicNumber>,
    pub diff_valuations: Vec<Option<i64>>,
}

pub fn fermionic_integral(f: &dyn Fn(i64) -> Result<PadicNumber>, level: u32, p: u64) -> Result<FermionicResult> {
    crate::arith::require_odd_prime(p)?;
    if level == 0 {
        return Err(Error::InvalidParameter("level must be positive".into()));
    }
    let size = (p as i64).checked_pow(level).ok_or_else(|| Error::InvalidParameter("level too deep".into()))?;
    let mut sums = Vec::new();
    let mut s: Option<PadicNumber> = None;
    let mut next = p as i64;
    for x in 0..size {
        let fx = f(x)?;
        let term = if x % 2 == 0 { fx } else { fx.neg() };
        s = Some(match s {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
        if x + 1 == next {
            sums.push(s.clone().unwrap());
            next *= p as i64;
        }
    }
    let diff_valuations = sums.windows(2).map(|w| w[1].sub(&w[0]).map(|d| d.valuation())).collect::<Result<_>>()?;
    Ok(FermionicResult { value: sums.last().unwrap().clone(), sums, diff_valuations })
}

/// `Γ(x)Γ(y)/Γ(x+y)`.
pub fn padic_beta_rpq(x: i64, y: i64, tw: &TwistParams) -> Result<PadicNumber> {
    padic_gamma_rpq(x, tw)?.mul(&padic_gamma_rpq(y, tw)?)?.div(&padic_gamma_rpq(x + y, tw)?)
}

fn beta_checks(r: &mut Report, tw: &TwistParams) -> Result<()> {
    let d = tw.precision;
    let b = |x: i64, y: i64| padic_beta_rpq(x, y, tw);
    let dl = |z: i64| delta_factor(z, tw);
    let g = |z: i64| padic_gamma_rpq(z, tw);
    let p = tw.prime as i64;
    for (x, y) in [(1i64, 1i64), (2, 3), (p - 1, 2), (p, p + 1), (4, 7)] {
        let bxy = b(x, y)?;
        push_agree(r, format!("(i) β({x},{y}+1) = δ(y)/δ(x+y) β"), &b(x, y + 1)?, &dl(y)?.div(&dl(x + y)?)?.mul(&bxy)?, d, true)?;
        push_agree(r, format!("(ii) β({x}+1,{y}) = δ(x)/δ(x+y) β"), &b(x + 1, y)?, &dl(x)?.div(&dl(x + y)?)?.mul(&bxy)?, d, true)?;
        push_agree(r, format!("(iii) β({x}+1,{y}) = δ(x)/δ(y) β(x,y+1)"), &b(x + 1, y)?, &dl(x)?.div(&dl(y)?)?.mul(&b(x, y + 1)?)?, d, true)?;
        push_agree(
            r,
            format!("(v) β({x}+1,{y}) + β({x},{y}+1) = (δ(x)+δ(y))/δ(x+y) β"),
            &b(x + 1, y)?.add(&b(x, y + 1)?)?,
            &dl(x)?.add(&dl(y)?)?.div(&dl(x + y)?)?.mul(&bxy)?,
            d,
            true,
        )?;
        push_agree(
            r,
            format!("(vi) β({x}+1,{y}+1) = δ(x)δ(y)/(δ(x+y+1)δ(x+y)) β"),
            &b(x + 1, y + 1)?,
            &dl(x)?.mul(&dl(y)?)?.div(&dl(x + y + 1)?.mul(&dl(x + y)?)?)?.mul(&bxy)?,
            d,
            true,
        )?;
        let (z, w) = (2i64, 5i64);
        push_agree(
            r,
            format!("(vii) β({x},{y}) β(x+y,{z}) β(x+y+z,{w}) = ΓΓΓΓ/Γ"),
            &bxy.mul(&b(x + y, z)?)?.mul(&b(x + y + z, w)?)?,
            &g(x)?.mul(&g(y)?)?.mul(&g(z)?)?.mul(&g(w)?)?.div(&g(x + y + z + w)?)?,
            d,
            true,
        )?;
        push_agree(r, format!("(viii) β({x},1-{x}) = -Γ(x)Γ(1-x)"), &b(x, 1 - x)?, &g(x)?.mul(&g(1 - x)?)?.neg(), d, true)?;
    }
    Ok(())
}

/// Gamma, decomposition and beta identities at `n <= n_max`.
pub fn gamma_suite(tw: &TwistParams, n_max: i64) -> Result<Report> {
    let mut r = Report::new(format!("padic_gamma p={}", tw.prime));
    let d = tw.precision;
    let p = tw.prime as i64;
    push_agree(&mut r, "Γ(0) = 1", &padic_gamma_rpq(0, tw)?, &tw.int(1), d, true)?;
    push_agree(&mut r, "Γ(1) = -1", &padic_gamma_rpq(1, tw)?, &tw.int(-1), d, true)?;
    let mut units = true;
    for x in 0..20 {
        units &= padic_gamma_rpq(x, tw)?.valuation() == Some(0);
    }
    r.push("|Γ(x)|_p = 1 for x = 0..19", units, "", "", "");
    for z in -p..=3 * p {
        push_agree(
            &mut r,
            format!("Γ({z}+1) = δ({z})Γ({z})"),
            &padic_gamma_rpq(z + 1, tw)?,
            &delta_factor(z, tw)?.mul(&padic_gamma_rpq(z, tw)?)?,
            d,
            true,
        )?;
    }
    for n in 1..=n_max {
        r.extend(factorial_decomposition_check(n, tw)?);
    }
    beta_checks(&mut r, tw)?;
    Ok(r)
}

/// Measure, Volkenborn, Carlitz and fermionic checks.
pub fn volkenborn_suite(tw: &TwistParams, levels: &[u32]) -> Result<Report> {
    let mut r = Report::new(format!("volkenborn p={}", tw.prime));
    let d = tw.precision;
    let assert = tw.structure.is_js();
    for n in [1u32, 2] {
        let coarse = VolkenbornLevel::new(n, tw)?;
        let fine = VolkenbornLevel::new(n + 1, tw)?;
        let pn = (tw.prime as i64).pow(n);
        for a in [0, 1, pn - 1] {
            let mut s = PadicNumber::zero(tw.prime, tw.work());
            for i in 0..tw.prime as i64 {
                s = s.add(&volkenborn_measure(a + i * pn, &fine, tw)?)?;
            }
            push_agree(&mut r, format!("Σ_i μ({a} + i p^{n} + p^{}) = μ({a} + p^{n})", n + 1), &s, &volkenborn_measure(a, &coarse, tw)?, d, assert)?;
        }
    }
    let one = |_: i64| Ok(tw.int(1));
    let mass = volkenborn_integral(&one, levels, tw)?;
    let n0 = if tw.classical { tw.int(1) } else { tw.rho.mul(&tw.kappa)?.div(&tw.number(1)?)? };
    push_agree(&mut r, "∫ 1 dμ = μ(Z_p)", &mass.value, &n0, d, assert)?;

    if tw.classical {
        let id = |x: i64| Ok(tw.int(x));
        let b1 = volkenborn_integral(&id, levels, tw)?;
        let digits = b1.certified_digits().unwrap_or(0).max(0) as u32;
        let half = PadicNumber::from_rational(&Q::new((-1).into(), 2.into()), tw.prime, tw.work())?;
        push_agree(&mut r, format!("∫ x dμ = -1/2 to {digits} digits"), &b1.value, &half, digits, true)?;
        r.push(
            "∫ x dμ difference valuations strictly increase",
            strictly_increasing(&b1.diff_valuations) && b1.diff_valuations.len() + 1 == levels.len(),
            format!("{:?}", b1.diff_valuations),
            "",
            "",
        );
    }

    if assert {
        let (lhs, rhs, digits) = shift_identity(levels, tw)?;
        let k = digits.unwrap_or(0).clamp(0, d as i64) as u32;
        push_agree(&mut r, format!("q I(f_1) - ρ I(f) boundary formula at f(x) = x, {k} digits"), &lhs, &rhs, k, true)?;
        let shallow: Vec<u32> = levels.iter().copied().filter(|&l| (tw.prime as u128).pow(l) <= CARLITZ_POINTS).collect();
        let levels = if shallow.len() > CERT_WINDOW { &shallow[..] } else { levels };
        let x = tw.int(2);
        let c = carlitz_bernoulli(2, &Q::zero(), &x, levels, tw)?;
        let k = c.certified_digits.clamp(0, d as i64) as u32;
        push_agree(&mut r, format!("B_(2;0)(2) direct = binomial form, {k} digits"), &c.direct, &c.binomial, k, true)?;
        if tw.classical {
            let c = carlitz_bernoulli(1, &Q::zero(), &tw.int(0), levels, tw)?;
            let half = PadicNumber::from_rational(&Q::new((-1).into(), 2.into()), tw.prime, tw.work())?;
            let k = c.certified_digits.clamp(0, d as i64) as u32;
            push_agree(&mut r, format!("classical B_1(0) = -1/2, {k} digits"), &c.direct, &half, k, true)?;
        }
    }

    if tw.prime > 2 {
        let lv = levels.last().copied().unwrap_or(1).min(6);
        let sq = |x: i64| Ok(tw.int(x * x + 1));
        let sq1 = |x: i64| Ok(tw.int((x + 1) * (x + 1) + 1));
        let a = fermionic_integral(&sq, lv, tw.prime)?;
        let b = fermionic_integral(&sq1, lv, tw.prime)?;
        let k = lv.min(d);
        push_agree(&mut r, format!("I_-1(f_1) + I_-1(f) = 2 f(0) at f = x² + 1, {k} digits"), &a.value.add(&b.value)?, &tw.int(2), k, true)?;
        let c = fermionic_integral(&|_| Ok(tw.int(1)), lv, tw.prime)?;
        push_agree(&mut r, "I_-1(1) = 1", &c.value, &tw.int(1), d, true)?;
    }
    Ok(r)
}
