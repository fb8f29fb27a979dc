//! p-adic spin(1/2) generators and the SL(2) exponential and logarithm;
//! exact local zeta functions in `t = p^(-s)`; ghost boundaries.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{pow_int, pow_rational, qi, PadicNumber, Q};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::series::PolynomialExact;

/// 2×2 matrix over `Q_p` with entries `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mat2Padic {
    pub a: PadicNumber,
    pub b: PadicNumber,
    pub c: PadicNumber,
    pub d: PadicNumber,
}

impl Mat2Padic {
    pub fn new(a: PadicNumber, b: PadicNumber, c: PadicNumber, d: PadicNumber) -> Result<Self> {
        let p = a.prime();
        if [&b, &c, &d].iter().any(|x| x.prime() != p) {
            return Err(Error::InvalidParameter("matrix entries use different primes".into()));
        }
        Ok(Mat2Padic { a, b, c, d })
    }

    pub fn from_rationals(e: [&Q; 4], prime: u64, precision: u32) -> Result<Self> {
        let f = |x: &Q| PadicNumber::from_rational(x, prime, precision);
        Self::new(f(e[0])?, f(e[1])?, f(e[2])?, f(e[3])?)
    }

    pub fn identity(prime: u64, precision: u32) -> Self {
        let (o, z) = (PadicNumber::one(prime, precision), PadicNumber::zero(prime, precision));
        Mat2Padic { a: o.clone(), b: z.clone(), c: z, d: o }
    }

    pub fn zero(prime: u64, precision: u32) -> Self {
        let z = PadicNumber::zero(prime, precision);
        Mat2Padic { a: z.clone(), b: z.clone(), c: z.clone(), d: z }
    }

    pub fn prime(&self) -> u64 {
        self.a.prime()
    }

    /// Smallest relative precision among the nonzero entries.
    pub fn precision(&self) -> u32 {
        self.entries().iter().map(|x| x.precision()).min().unwrap_or(0)
    }

    pub fn entries(&self) -> [&PadicNumber; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    fn map2(&self, o: &Self, f: impl Fn(&PadicNumber, &PadicNumber) -> Result<PadicNumber>) -> Result<Self> {
        Ok(Mat2Padic { a: f(&self.a, &o.a)?, b: f(&self.b, &o.b)?, c: f(&self.c, &o.c)?, d: f(&self.d, &o.d)? })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.map2(o, |x, y| x.add(y))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.map2(o, |x, y| x.sub(y))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let e = |x: &PadicNumber, y: &PadicNumber, u: &PadicNumber, v: &PadicNumber| x.mul(y)?.add(&u.mul(v)?);
        Ok(Mat2Padic {
            a: e(&self.a, &o.a, &self.b, &o.c)?,
            b: e(&self.a, &o.b, &self.b, &o.d)?,
            c: e(&self.c, &o.a, &self.d, &o.c)?,
            d: e(&self.c, &o.b, &self.d, &o.d)?,
        })
    }

    pub fn scale(&self, s: &PadicNumber) -> Result<Self> {
        Ok(Mat2Padic { a: self.a.mul(s)?, b: self.b.mul(s)?, c: self.c.mul(s)?, d: self.d.mul(s)? })
    }

    pub fn trace(&self) -> Result<PadicNumber> {
        self.a.add(&self.d)
    }

    pub fn det(&self) -> Result<PadicNumber> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }

    /// All entries vanish to their precision.
    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|x| x.is_zero())
    }

    pub fn eq_to_precision(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// `min v(entry)`; `None` for the zero matrix.
    pub fn valuation(&self) -> Option<i64> {
        self.entries().iter().filter_map(|x| x.valuation()).min()
    }
}

impl fmt::Display for Mat2Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `(S₋, S_z, S₊)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpinGenerators {
    pub minus: Mat2Padic,
    pub z: Mat2Padic,
    pub plus: Mat2Padic,
}

/// `S₋ = h E₂₁`, `S_z = (h/2) diag(1, -1)`, `S₊ = h E₁₂`.
pub fn spin_generators(scale: &Q, prime: u64, precision: u32) -> Result<SpinGenerators> {
    let (z, h) = (Q::zero(), scale.clone());
    let half = scale / qi(2);
    let mk = |e: [&Q; 4]| Mat2Padic::from_rationals(e, prime, precision);
    Ok(SpinGenerators {
        minus: mk([&z, &z, &h, &z])?,
        z: mk([&half, &z, &z, &(-half.clone())])?,
        plus: mk([&z, &h, &z, &z])?,
    })
}

/// `xS₋ + yS_z + zS₊`.
pub fn spin_combination(g: &SpinGenerators, x: &PadicNumber, y: &PadicNumber, z: &PadicNumber) -> Result<Mat2Padic> {
    g.minus.scale(x)?.add(&g.z.scale(y)?)?.add(&g.plus.scale(z)?)
}

pub fn commutator(a: &Mat2Padic, b: &Mat2Padic) -> Result<Mat2Padic> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `Σ δ^k / (2k + j)!` for `j ∈ {0, 1}`, to absolute precision `target`.
fn even_odd_series(delta: &PadicNumber, j: i64, target: i64) -> Result<PadicNumber> {
    let p = delta.prime();
    let n = delta.precision();
    let pm1 = p as i64 - 1;
    let mut sum = PadicNumber::zero(p, n);
    let mut term = PadicNumber::one(p, n);
    sum = sum.add(&term)?;
    let Some(w) = delta.valuation() else {
        return Ok(sum);
    };
    let mut k: i64 = 1;
    loop {
        // v(δ^k/(2k+j)!) >= k w - (2k + j - 1)/(p - 1)
        if k * w * pm1 - (2 * k + j - 1) >= target * pm1 {
            break;
        }
        let m1 = 2 * k + j - 1;
        let m2 = 2 * k + j;
        term = term.mul(delta)?.div(&PadicNumber::from_i64(m1 * m2, p, n)?)?;
        sum = sum.add(&term)?;
        k += 1;
    }
    Ok(sum)
}

/// `exp(tS)` through `exp(X) = c(δ) I + s(δ) X`, `X² = δ I` for trace-zero `X`.
///
/// Nilpotent `X` returns `I + X` exactly; otherwise `v(δ) > 2/(p-1)` is required.
/// A non-zero trace is split off as the scalar `exp(Tr X / 2)` (odd `p`).
pub fn mat_exp(s: &Mat2Padic, t: &PadicNumber) -> Result<Mat2Padic> {
    let p = s.prime();
    let n = s.precision().max(t.precision());
    let x = s.scale(t)?;
    let tr = x.trace()?;
    let (x0, scalar) = if tr.is_zero() {
        (x, None)
    } else {
        if p == 2 {
            return Err(Error::ConvergenceDomain("trace splitting needs an odd prime".into()));
        }
        let half = tr.div(&PadicNumber::from_i64(2, p, n)?)?;
        let shift = Mat2Padic::identity(p, n).scale(&half)?;
        (x.sub(&shift)?, Some(half.exp()?))
    };
    let delta = x0.det()?.neg();
    let id = Mat2Padic::identity(p, n);
    let out = if delta.is_zero() {
        id.add(&x0)?
    } else {
        let w = delta.valuation().unwrap_or(i64::MAX);
        if (p as i64 - 1) * w <= 2 {
            return Err(Error::ConvergenceDomain(format!(
                "exp needs eigenvalues with |λ|_p < p^(-1/(p-1)); v(λ²) = {w}"
            )));
        }
        let target = n as i64;
        let c = even_odd_series(&delta, 0, target)?;
        let sh = even_odd_series(&delta, 1, target)?;
        id.scale(&c)?.add(&x0.scale(&sh)?)?
    };
    match scalar {
        Some(e) => out.scale(&e),
        None => Ok(out),
    }
}

/// `log g = Σ (-1)^(n-1) (g - I)^n / n`, using `Y^n = a_n Y + b_n I` for `Y = g - I`.
///
/// Requires `det g = 1` and `v(Tr g - 2) > 2/(p-1)`; `Tr g = 2` terminates after one term.
pub fn mat_log(g: &Mat2Padic) -> Result<Mat2Padic> {
    let p = g.prime();
    let n = g.precision();
    let one = PadicNumber::one(p, n);
    if !g.det()?.sub(&one)?.is_zero() {
        return Err(Error::ConvergenceDomain("log needs det g = 1".into()));
    }
    let id = Mat2Padic::identity(p, n);
    let y = g.sub(&id)?;
    let tau = g.trace()?.sub(&PadicNumber::from_i64(2, p, n)?)?;
    let Some(w) = tau.valuation() else {
        return Ok(y);
    };
    if (p as i64 - 1) * w <= 2 {
        return Err(Error::ConvergenceDomain(format!("log needs |Tr g - 2|_p < p^(-2/(p-1)); v = {w}")));
    }
    let vy = y.valuation().unwrap_or(0).min(0);
    let target = n as i64 + vy.abs();
    let mut a_coef = PadicNumber::zero(p, n);
    let mut b_coef = PadicNumber::zero(p, n);
    let (mut an, mut bn) = (one.clone(), PadicNumber::zero(p, n));
    let mut k: i64 = 1;
    let log_p = |m: i64| {
        let (mut e, mut t) = (0i64, m);
        while t >= p as i64 {
            t /= p as i64;
            e += 1;
        }
        e
    };
    loop {
        let kk = PadicNumber::from_i64(if k % 2 == 1 { k } else { -k }, p, n)?;
        a_coef = a_coef.add(&an.div(&kk)?)?;
        b_coef = b_coef.add(&bn.div(&kk)?)?;
        // v(a_m), v(b_m) >= ⌊(m-1)/2⌋ w for m > k
        let bound = |m: i64| ((m - 1) / 2) * w - log_p(m);
        if bound(k + 1) >= target && bound(k + 2) >= target {
            break;
        }
        let next_a = tau.mul(&an)?.add(&bn)?;
        bn = tau.mul(&an)?;
        an = next_a;
        k += 1;
    }
    y.scale(&a_coef)?.add(&id.scale(&b_coef)?)
}

/// Largest `i <= precision` with `g ≡ I mod p^i`; `0` outside `K₁`.
pub fn congruence_level(g: &Mat2Padic) -> u32 {
    let n = g.precision();
    match g.sub(&Mat2Padic::identity(g.prime(), n)) {
        Ok(d) => match d.valuation() {
            None => n,
            Some(v) => v.clamp(0, n as i64) as u32,
        },
        Err(_) => 0,
    }
}

/// Reduced rational function `num(t)/den(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalZetaRational {
    num: PolynomialExact,
    den: PolynomialExact,
}

impl LocalZetaRational {
    pub fn new(num: PolynomialExact, den: PolynomialExact) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        } else {
            (num, den)
        };
        let c0 = den.coeff(0);
        let lead = if c0.is_zero() { den.coeff(den.degree().unwrap_or(0)) } else { c0 };
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(LocalZetaRational { num, den })
    }

    pub fn constant(c: Q) -> Self {
        LocalZetaRational { num: PolynomialExact::constant(c), den: PolynomialExact::one() }
    }

    pub fn numerator(&self) -> &PolynomialExact {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialExact {
        &self.den
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at t = {t}")));
        }
        Ok(self.num.eval(t) / d)
    }
}

impl fmt::Display for LocalZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// `1/(1 - p^a t^m)`, i.e. `ζ_p(ms - a)` under `t = p^(-s)`.
pub fn zeta_p_factor(p: &Q, shift_a: i64, multiplier_m: u32) -> Result<LocalZetaRational> {
    let c = pow_int(p, shift_a)?;
    let den = PolynomialExact::one().sub(&PolynomialExact::monomial(c, multiplier_m as usize));
    LocalZetaRational::new(PolynomialExact::one(), den)
}

fn lin(c0: Q, c: Q, k: usize) -> PolynomialExact {
    PolynomialExact::constant(c0).add(&PolynomialExact::monomial(c, k))
}

/// `Z_f(s-2) = (1 - p⁻¹)(1 - p⁻¹t)/((1 - pt²)(1 - pt))` for `f = x₃² + 4x₁x₂`.
pub fn igusa_zf(p: u64) -> Result<LocalZetaRational> {
    crate::arith::require_odd_prime(p)?;
    let pq = qi(p as i64);
    let ip = pq.recip();
    let num = PolynomialExact::constant(Q::one() - &ip).mul(&lin(Q::one(), -ip, 1));
    let den = lin(Q::one(), -pq.clone(), 2).mul(&lin(Q::one(), -pq, 1));
    LocalZetaRational::new(num, den)
}

/// The five factors `(label, a, m, exponent)` of `ζ_spin`.
const SPIN_FACTORS: [(&str, i64, u32, i32); 5] = [
    ("ζ_p(s)", 0, 1, 1),
    ("ζ_p(s-1)", 1, 1, 1),
    ("ζ_p(2s-1)", 1, 2, 1),
    ("ζ_p(2s-2)", 2, 2, 1),
    ("ζ_p(3s-1)", 1, 3, -1),
];

/// `ζ_p(s)ζ_p(s-1)ζ_p(2s-1)ζ_p(2s-2)/ζ_p(3s-1)` as a rational function of `t`.
pub fn zeta_spin_rational(p: u64) -> Result<LocalZetaRational> {
    crate::arith::require_prime(p)?;
    let pq = qi(p as i64);
    let mut acc = LocalZetaRational::constant(Q::one());
    for (_, a, m, e) in SPIN_FACTORS {
        let f = zeta_p_factor(&pq, a, m)?;
        acc = if e > 0 { acc.mul(&f)? } else { acc.div(&f)? };
    }
    Ok(acc)
}

/// Exact value with the factor values that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaValue {
    pub p: u64,
    pub s: String,
    pub value: String,
    pub factors: Vec<(String, String)>,
    #[serde(skip)]
    pub exact: Q,
}

/// `t = p^(-s)`; exact only for integer `s`.
pub fn t_of(p: u64, s: &Q) -> Result<Q> {
    pow_rational(&qi(p as i64), &(-s.clone()))
}

/// Product evaluation of `ζ_spin` at `t = p^(-s)`, naming the factor at a pole.
pub fn zeta_spin_half(p: u64, s: &Q) -> Result<ZetaValue> {
    crate::arith::require_prime(p)?;
    for (label, a, m, e) in SPIN_FACTORS {
        if e > 0 && s * qi(m as i64) - qi(a) == Q::zero() {
            return Err(Error::Pole(format!("{label} has a pole at s = {s}")));
        }
    }
    let t = t_of(p, s)?;
    let pq = qi(p as i64);
    let mut value = Q::one();
    let mut factors = Vec::new();
    for (label, a, m, e) in SPIN_FACTORS {
        let v = zeta_p_factor(&pq, a, m)?
            .eval(&t)
            .map_err(|_| Error::Pole(format!("{label} has a pole at s = {s}")))?;
        factors.push((label.to_string(), v.to_string()));
        value = if e > 0 { value * v } else { value / v };
    }
    Ok(ZetaValue { p, s: s.to_string(), value: value.to_string(), factors, exact: value })
}

/// `ζ_p(s)ζ_p(s-1)ζ_p(s-2) - Z_f(s-2)ζ_p(2s-2)p^((2-s)(i+1))(1-p⁻¹)⁻¹` as a function of `t`.
pub fn zeta_subtraction_rational(p: u64, i: i64) -> Result<LocalZetaRational> {
    if i > 0 {
        return Err(Error::InvalidParameter("the subtraction form needs i <= 0".into()));
    }
    let pq = qi(p as i64);
    let z3 = zeta_p_factor(&pq, 0, 1)?.mul(&zeta_p_factor(&pq, 1, 1)?)?.mul(&zeta_p_factor(&pq, 2, 1)?)?;
    let k = (i + 1) as usize;
    // p^((2-s)(i+1)) = p^(2(i+1)) t^(i+1)
    let shift = LocalZetaRational::new(PolynomialExact::monomial(pow_int(&pq, 2 * (i + 1))?, k), PolynomialExact::one())?;
    let inv = LocalZetaRational::constant((Q::one() - pq.recip()).recip());
    let second = igusa_zf(p)?.mul(&zeta_p_factor(&pq, 2, 2)?)?.mul(&shift)?.mul(&inv)?;
    z3.sub(&second)
}

/// The subtraction display at `i = 0` including its `(1 - p²t)` denominator factor.
pub fn zeta_subtraction_display(p: u64) -> Result<LocalZetaRational> {
    let pq = qi(p as i64);
    let z3 = zeta_p_factor(&pq, 0, 1)?.mul(&zeta_p_factor(&pq, 1, 1)?)?.mul(&zeta_p_factor(&pq, 2, 1)?)?;
    let num = lin(Q::one(), -pq.recip(), 1).mul(&PolynomialExact::monomial(&pq * &pq, 1));
    let den = lin(Q::one(), -pq.clone(), 1)
        .mul(&lin(Q::one(), -(&pq * &pq), 1))
        .mul(&lin(Q::one(), -pq.clone(), 2))
        .mul(&lin(Q::one(), -(&pq * &pq), 2));
    z3.sub(&LocalZetaRational::new(num, den)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GhostGroup {
    GoOdd,
    Gsp,
    GoEvenPlus,
}

impl GhostGroup {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "go_odd" | "go-odd" | "b" => Ok(GhostGroup::GoOdd),
            "gsp" | "c" => Ok(GhostGroup::Gsp),
            "go_even_plus" | "go-even-plus" | "d" => Ok(GhostGroup::GoEvenPlus),
            _ => Err(Error::Parse(format!("unknown group '{s}' (go_odd, gsp, go_even_plus)"))),
        }
    }
}

/// Abscissa `l² - 1`, `l(l+1)/2 - 2`, `l(l-1)/2 - 2`.
pub fn ghost_boundary(group: GhostGroup, l: i64) -> Result<Q> {
    if l < 1 {
        return Err(Error::InvalidParameter("l must be at least 1".into()));
    }
    Ok(qi(match group {
        GhostGroup::GoOdd => l * l - 1,
        GhostGroup::Gsp => l * (l + 1) / 2 - 2,
        GhostGroup::GoEvenPlus => l * (l - 1) / 2 - 2,
    }))
}

/// Commutators, exp/log, congruence levels and zeta checks at prime `p`.
pub fn suite(p: u64, precision: u32) -> Result<Report> {
    let mut r = Report::new(format!("spinzeta p={p}"));
    let n = precision;
    let pn = |x: i64| PadicNumber::from_i64(x, p, n);
    for h in [Q::one(), qi(p as i64)] {
        let g = spin_generators(&h, p, n)?;
        let hp = PadicNumber::from_rational(&h, p, n)?;
        let mut eq = |name: String, a: Mat2Padic, b: Mat2Padic| -> Result<()> {
            let ok = a.eq_to_precision(&b)?;
            r.push(name, ok, &a, &b, if ok { "0" } else { "nonzero" });
            Ok(())
        };
        eq(format!("[S_z, S+] = ħS+ (ħ = {h})"), commutator(&g.z, &g.plus)?, g.plus.scale(&hp)?)?;
        eq(format!("[S_z, S-] = -ħS- (ħ = {h})"), commutator(&g.z, &g.minus)?, g.minus.scale(&hp.neg())?)?;
        eq(format!("[S+, S-] = 2ħS_z (ħ = {h})"), commutator(&g.plus, &g.minus)?, g.z.scale(&hp.mul(&pn(2)?)?)?)?;
        eq(format!("S+² = 0 (ħ = {h})"), g.plus.mul(&g.plus)?, Mat2Padic::zero(p, n))?;
        let ok = g.z.trace()?.is_zero() && g.plus.trace()?.is_zero() && g.minus.trace()?.is_zero();
        r.push(format!("generators are trace-zero (ħ = {h})"), ok, "", "", "");
        let ok = !commutator(&g.z, &g.plus)?.eq_to_precision(&g.plus.scale(&hp.mul(&pn(2)?)?)?)?;
        r.measure(format!("printed [S_z, S+] = 2ħS+ fails (ħ = {h})"), ok, "", "");
    }

    let g = spin_generators(&Q::one(), p, n)?;
    let t = pn(p as i64)?;
    let id = Mat2Padic::identity(p, n);
    for (label, s) in [("S_z", &g.z), ("S+", &g.plus), ("S-", &g.minus)] {
        let e = mat_exp(s, &t)?;
        let ok = e.det()?.sub(&pn(1)?)?.is_zero();
        r.push(format!("det exp(p {label}) = 1"), ok, e.det()?, 1, "");
        let back = mat_log(&e)?;
        let ts = s.scale(&t)?;
        let ok = back.eq_to_precision(&ts)?;
        r.push(format!("log exp(p {label}) = p {label}"), ok, &back, &ts, "");
        let ok = back.trace()?.is_zero();
        r.push(format!("Tr log exp(p {label}) = 0"), ok, back.trace()?, 0, "");
        for i in 1..=3u32 {
            let ti = pn((p as i64).pow(i))?;
            let lvl = congruence_level(&mat_exp(s, &ti)?);
            r.push(format!("level(exp(p^{i} {label})) >= {i}"), lvl >= i, lvl, i, "");
        }
    }
    let x = pn(3)?;
    let ok = mat_exp(&g.plus, &x)?.eq_to_precision(&id.add(&g.plus.scale(&x)?)?)?;
    r.push("exp(3 S+) = I + 3 S+", ok, "", "", "");

    let pq = qi(p as i64);
    let spin = zeta_spin_rational(p)?;
    let samples: Vec<i64> = (2..=11).collect();
    for s in &samples {
        let t = t_of(p, &qi(*s))?;
        let v = zeta_spin_half(p, &qi(*s))?.exact;
        r.exact(format!("ζ_spin({s}) product = rational function"), &v, &spin.eval(&t)?);
    }
    if p > 2 {
        let disp = zeta_subtraction_display(p)?;
        r.push("displayed subtraction form = product form", disp == spin, &disp, &spin, "");
        let thm = zeta_subtraction_rational(p, 0)?;
        r.measure("subtraction form with ζ_p(s)ζ_p(s-1)ζ_p(s-2), i = 0", &thm, &spin, thm.sub(&spin)?);
        let z = igusa_zf(p)?;
        r.exact("Z_f at t = 0 is 1 - 1/p", &z.eval(&Q::zero())?, &(Q::one() - pq.recip()));
    }
    for (grp, l, want) in [(GhostGroup::Gsp, 2, 1), (GhostGroup::GoOdd, 1, 0), (GhostGroup::GoEvenPlus, 2, -1)] {
        r.exact(format!("ghost boundary {grp:?} l = {l}"), &ghost_boundary(grp, l)?, &qi(want));
    }
    Ok(r)
}
