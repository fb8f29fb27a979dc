//! Structure functions, parameter sets, and deformed numbers/factorials/binomials.
//!
//! Preset numbers are evaluated through the division-free form
//! `[n] = K * sum_{k<n} A^(n-1-k) B^k`, so confluent parameters such as
//! `p = q = 1` are handled without special cases.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{parse_rational, Scalar, Q};
use crate::error::{Error, Result};
use crate::report::Report;

/// Window `n = 1..K` checked for positivity at binding time.
pub const POSITIVITY_WINDOW: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Heine,
    Quesne,
    BiedenharnMacfarlane,
    JagannathanSrinivasa,
    ChakrabartyJagannathan,
    HounkonnouNgompe,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Heine,
        Preset::Quesne,
        Preset::BiedenharnMacfarlane,
        Preset::JagannathanSrinivasa,
        Preset::ChakrabartyJagannathan,
        Preset::HounkonnouNgompe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Heine => "heine",
            Preset::Quesne => "quesne",
            Preset::BiedenharnMacfarlane => "biedenharn_macfarlane",
            Preset::JagannathanSrinivasa => "jagannathan_srinivasa",
            Preset::ChakrabartyJagannathan => "chakrabarty_jagannathan",
            Preset::HounkonnouNgompe => "hounkonnou_ngompe",
        }
    }

    /// Accepts the full names and the short forms `bm`, `js`, `cj`, `hn`.
    pub fn parse(s: &str) -> Result<Preset> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match t.as_str() {
            "heine" => Preset::Heine,
            "quesne" => Preset::Quesne,
            "biedenharn_macfarlane" | "bm" => Preset::BiedenharnMacfarlane,
            "jagannathan_srinivasa" | "js" => Preset::JagannathanSrinivasa,
            "chakrabarty_jagannathan" | "cj" => Preset::ChakrabartyJagannathan,
            "hounkonnou_ngompe" | "hn" => Preset::HounkonnouNgompe,
            _ => return Err(Error::Parse(format!("unknown preset {s:?}"))),
        })
    }

    /// `(A, B, K)` with `[n] = K (A^n - B^n)/(A - B)`.
    fn bases<S: Scalar>(self, p: &S, q: &S) -> Result<(S, S, S)> {
        let one = p.one_like();
        let inv = |x: &S, what: &str| {
            one.over(x).map_err(|_| Error::InvalidParameter(format!("{what} must be nonzero for {}", self.name())))
        };
        Ok(match self {
            Preset::Heine => (one.clone(), q.clone(), one),
            Preset::Quesne => {
                let qi = inv(q, "q")?;
                (one, qi.clone(), qi)
            }
            Preset::BiedenharnMacfarlane => (q.clone(), inv(q, "q")?, one),
            Preset::JagannathanSrinivasa => (p.clone(), q.clone(), one),
            Preset::ChakrabartyJagannathan => (inv(p, "p")?, q.clone(), one),
            Preset::HounkonnouNgompe => {
                let qi = inv(q, "q")?;
                (p.clone(), qi.clone(), p.times(&qi))
            }
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finite sum of `c * u^s * v^t` with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    pub terms: Vec<(i32, i32, Q)>,
}

impl LaurentPoly2 {
    pub fn new(terms: Vec<(i32, i32, Q)>) -> Self {
        LaurentPoly2 { terms: terms.into_iter().filter(|t| !t.2.is_zero()).collect() }
    }

    pub fn eval<S: Scalar>(&self, u: &S, v: &S) -> Result<S> {
        let mut acc = u.zero_like();
        for (s, t, c) in &self.terms {
            let term = u.from_rational_like(c)?.times(&u.powi(*s as i64)?).times(&v.powi(*t as i64)?);
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    /// Value at `(1, 1)`: the coefficient sum.
    pub fn at_one(&self) -> Q {
        self.terms.iter().map(|t| t.2.clone()).sum()
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("custom kernel: {m}"));
        let arr = v.as_array().ok_or_else(|| bad("expected a list of [s, t, coeff] triples"))?;
        let mut terms = Vec::new();
        for item in arr {
            let t = item.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("each term is [s, t, coeff]"))?;
            let e = |x: &Value| x.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or_else(|| bad("integer exponent"));
            let c = match &t[2] {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(bad("coefficient must be a number or \"a/b\" string")),
            };
            terms.push((e(&t[0])?, e(&t[1])?, c));
        }
        Ok(LaurentPoly2::new(terms))
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(s, t, c)| Value::Array(vec![(*s).into(), (*t).into(), c.to_string().into()]))
                .collect(),
        )
    }
}

/// `R(u,v) = N(u,v)/D(u,v)` with `N(1,1) = 0` and `D(1,1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomKernel {
    numerator: LaurentPoly2,
    denominator: LaurentPoly2,
}

impl CustomKernel {
    pub fn new(numerator: LaurentPoly2, denominator: LaurentPoly2) -> Result<Self> {
        if !numerator.at_one().is_zero() {
            return Err(Error::InvalidParameter("custom kernel must satisfy R(1,1) = 0".into()));
        }
        if denominator.at_one().is_zero() {
            return Err(Error::Singularity("custom kernel denominator vanishes at (1,1)".into()));
        }
        Ok(CustomKernel { numerator, denominator })
    }

    /// Parses `{"numerator": [[s,t,c],...], "denominator": [...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("custom kernel JSON: {e}")))?;
        let num = v.get("numerator").ok_or_else(|| Error::Parse("custom kernel: missing numerator".into()))?;
        let den = v.get("denominator").ok_or_else(|| Error::Parse("custom kernel: missing denominator".into()))?;
        Self::new(LaurentPoly2::from_json(num)?, LaurentPoly2::from_json(den)?)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
        })
    }

    pub fn eval<S: Scalar>(&self, u: &S, v: &S) -> Result<S> {
        let d = self.denominator.eval(u, v)?;
        if d.is_zero_value() {
            return Err(Error::Singularity(format!("denominator vanishes at u = {u}, v = {v}")));
        }
        self.numerator.eval(u, v)?.over(&d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureFunction {
    Preset(Preset),
    Custom(CustomKernel),
}

impl StructureFunction {
    pub fn name(&self) -> &'static str {
        match self {
            StructureFunction::Preset(p) => p.name(),
            StructureFunction::Custom(_) => "custom",
        }
    }

    pub fn is_js(&self) -> bool {
        matches!(self, StructureFunction::Preset(Preset::JagannathanSrinivasa))
    }
}

impl From<Preset> for StructureFunction {
    fn from(p: Preset) -> Self {
        StructureFunction::Preset(p)
    }
}

/// Deformation parameters `p, q`, twist bases `xi1, xi2`, and the kernel.
#[derive(Clone, Debug)]
pub struct DeformParams<S: Scalar> {
    p: S,
    q: S,
    xi1: S,
    xi2: S,
    structure: StructureFunction,
}

impl<S: Scalar> DeformParams<S> {
    /// Binds `p, q` with `xi1 = p`, `xi2 = q` and checks `[n] > 0` for `n <= 64`
    /// (nonzero for p-adic scalars).
    pub fn new(structure: impl Into<StructureFunction>, p: S, q: S) -> Result<Self> {
        let params = Self::unchecked(structure.into(), p.clone(), q.clone(), p, q);
        params.check_window()?;
        Ok(params)
    }

    pub fn unchecked(structure: StructureFunction, p: S, q: S, xi1: S, xi2: S) -> Self {
        DeformParams { p, q, xi1, xi2, structure }
    }

    pub fn with_twist(mut self, xi1: S, xi2: S) -> Self {
        self.xi1 = xi1;
        self.xi2 = xi2;
        self
    }

    fn check_window(&self) -> Result<()> {
        let nums = self.numbers_up_to(POSITIVITY_WINDOW)?;
        for (n, v) in nums.iter().enumerate().skip(1) {
            if v.is_zero_value() {
                return Err(Error::SingularDeformation(format!("[{n}] = 0 for these parameters")));
            }
            if v.is_positive() == Some(false) {
                return Err(Error::InvalidParameter(format!("[{n}] = {v} is not positive")));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> &S {
        &self.p
    }
    pub fn q(&self) -> &S {
        &self.q
    }
    pub fn xi1(&self) -> &S {
        &self.xi1
    }
    pub fn xi2(&self) -> &S {
        &self.xi2
    }
    pub fn structure(&self) -> &StructureFunction {
        &self.structure
    }
    pub fn is_js(&self) -> bool {
        self.structure.is_js()
    }

    /// Parameters with `p, q, xi1, xi2` all raised to the `k`-th power.
    pub fn powered(&self, k: i64) -> Result<Self> {
        Ok(DeformParams {
            p: self.p.powi(k)?,
            q: self.q.powi(k)?,
            xi1: self.xi1.powi(k)?,
            xi2: self.xi2.powi(k)?,
            structure: self.structure.clone(),
        })
    }

    /// `[n] = R(p^n, q^n)`; negative `n` is allowed.
    pub fn number(&self, n: i64) -> Result<S> {
        match &self.structure {
            StructureFunction::Custom(k) => k.eval(&self.p.powi(n)?, &self.q.powi(n)?),
            StructureFunction::Preset(pr) => {
                let (a, b, k) = pr.bases(&self.p, &self.q)?;
                let m = n.unsigned_abs() as usize;
                let pos = k.times(&S::geometric_sums(&a, &b, m)[m]);
                if n >= 0 {
                    Ok(pos)
                } else {
                    Ok(a.times(&b).powi(-(m as i64))?.times(&pos).negate())
                }
            }
        }
    }

    /// `[0], [1], ..., [n_max]`.
    pub fn numbers_up_to(&self, n_max: i64) -> Result<Vec<S>> {
        match &self.structure {
            StructureFunction::Custom(_) => (0..=n_max).map(|n| self.number(n)).collect(),
            StructureFunction::Preset(pr) => {
                let (a, b, k) = pr.bases(&self.p, &self.q)?;
                let sums = S::geometric_sums(&a, &b, n_max.max(0) as usize);
                Ok(sums.iter().map(|h| k.times(h)).collect())
            }
        }
    }

    pub fn factorial(&self, n: i64) -> Result<S> {
        if n < 0 {
            return Err(Error::InvalidParameter(format!("factorial of negative n = {n}")));
        }
        let nums = self.numbers_up_to(n)?;
        Ok(self.p.product_of(&nums[1..]))
    }

    /// `[0]!, ..., [n_max]!`.
    pub fn factorials_up_to(&self, n_max: i64) -> Result<Vec<S>> {
        let nums = self.numbers_up_to(n_max)?;
        let mut out = Vec::with_capacity(nums.len());
        let mut acc = self.p.one_like();
        out.push(acc.clone());
        for x in nums.iter().skip(1) {
            acc = acc.times(x);
            out.push(acc.clone());
        }
        Ok(out)
    }

    /// `(A, B, K)` with `[n] = K (A^n - B^n)/(A - B)`; `None` for custom kernels.
    pub fn preset_bases(&self) -> Result<Option<(S, S, S)>> {
        match &self.structure {
            StructureFunction::Preset(pr) => Ok(Some(pr.bases(&self.p, &self.q)?)),
            StructureFunction::Custom(_) => Ok(None),
        }
    }

    /// `[m]!/([n]![m-n]!)`, computed as `Π_{i<k} [m-i] / Π_{i<k} [i+1]` with `k = min(n, m-n)`.
    pub fn binomial(&self, m: i64, n: i64) -> Result<S> {
        if n < 0 || n > m {
            return Err(Error::InvalidParameter(format!("binomial needs 0 <= n <= m, got m = {m}, n = {n}")));
        }
        let k = n.min(m - n) as usize;
        let nums = self.numbers_up_to(m)?;
        let m = m as usize;
        let top = self.p.product_of(&nums[m + 1 - k..=m]);
        let bottom = self.p.product_of(&nums[1..=k]);
        top.over(&bottom).map_err(|_| Error::SingularDeformation(format!("zero factorial in C({m},{n})")))
    }
}

impl DeformParams<Q> {
    /// JS parameters with twist bases `(p, q)`.
    pub fn js(p: Q, q: Q) -> Result<Self> {
        Self::new(Preset::JagannathanSrinivasa, p, q)
    }

    /// The undeformed limit `p = q = 1` of the JS family.
    pub fn classical() -> Self {
        Self::js(Q::one(), Q::one()).expect("classical parameters are valid")
    }
}

pub fn rpq_number<S: Scalar>(params: &DeformParams<S>, n: i64) -> Result<S> {
    params.number(n)
}

pub fn rpq_factorial<S: Scalar>(params: &DeformParams<S>, n: i64) -> Result<S> {
    params.factorial(n)
}

pub fn rpq_binomial<S: Scalar>(params: &DeformParams<S>, m: i64, n: i64) -> Result<S> {
    params.binomial(m, n)
}

/// Factorial recursion, binomial symmetry and Pascal rules for `n <= n_max`.
pub fn suite(params: &DeformParams<Q>, n_max: i64) -> Result<Report> {
    let mut r = Report::new(format!("deform {}", params.structure().name()));
    let nums = params.numbers_up_to(n_max)?;
    let facts = params.factorials_up_to(n_max)?;
    r.exact("[0] = 0", &nums[0], &Q::zero());
    r.exact("[0]! = 1", &facts[0], &Q::one());
    let mut rec = true;
    for n in 1..=n_max as usize {
        rec &= facts[n] == &facts[n - 1] * &nums[n];
    }
    r.push(format!("[n]! = [n][n-1]!, n <= {n_max}"), rec, "", "", if rec { "0" } else { "mismatch" });
    if let Some((a, b, k)) = params.preset_bases()? {
        let mut closed = true;
        let mut neg = true;
        for n in 0..=n_max {
            let direct = if a == b {
                &k * Q::from_integer(n.into()) * crate::arith::pow_int(&a, n - 1)?
            } else {
                &k * (crate::arith::pow_int(&a, n)? - crate::arith::pow_int(&b, n)?) / (&a - &b)
            };
            closed &= direct == nums[n as usize];
            neg &= params.number(-n)? == -crate::arith::pow_int(&(&a * &b), -n)? * &nums[n as usize];
        }
        r.push(format!("[n] = K(A^n - B^n)/(A - B), n <= {n_max}"), closed, "", "", "");
        r.push(format!("[-n] = -(AB)^(-n) [n], n <= {n_max}"), neg, "", "", "");
        let mut row = vec![Q::one()];
        let mut pascal = true;
        for m in 0..n_max.min(32) as usize {
            let mut next = vec![Q::one(); m + 2];
            for n in 1..=m {
                next[n] = crate::arith::pow_int(&a, n as i64)? * &row[n]
                    + crate::arith::pow_int(&b, (m + 1 - n) as i64)? * &row[n - 1];
            }
            for (n, c) in next.iter().enumerate() {
                pascal &= c * &facts[n] * &facts[m + 1 - n] == facts[m + 1];
            }
            row = next;
        }
        r.push("C(m+1,n) = A^n C(m,n) + B^(m+1-n) C(m,n-1)", pascal, "", "", "");
    }
    let mut sym = true;
    let mut prod = true;
    for m in 0..=n_max.min(12) {
        for n in 0..=m {
            let c = params.binomial(m, n)?;
            sym &= c == params.binomial(m, m - n)?;
            prod &= &c * &facts[n as usize] * &facts[(m - n) as usize] == facts[m as usize];
        }
    }
    r.push("C(m,n) = C(m,m-n)", sym, "", "", "");
    r.push("C(m,n)[n]![m-n]! = [m]!", prod, "", "", "");
    Ok(r)
}

/// Symmetric q-number identities of the Biedenharn–Macfarlane kind.
pub fn bm_identity_suite(q: &Q, n: i64, m: i64) -> Result<Report> {
    if q.is_zero() || q.is_one() || *q == -Q::one() {
        return Err(Error::InvalidParameter("q must differ from 0 and ±1".into()));
    }
    let params = DeformParams::unchecked(
        Preset::BiedenharnMacfarlane.into(),
        q.clone(),
        q.clone(),
        q.clone(),
        q.clone(),
    );
    let b = |k: i64| params.number(k);
    let qp = |k: i64| crate::arith::pow_int(q, k);
    let mut r = Report::new("bm_identities");
    r.exact("[n+m] = q^-m [n] + q^n [m]", &b(n + m)?, &(qp(-m)? * b(n)? + qp(n)? * b(m)?));
    r.exact("[-m] = -[m]", &b(-m)?, &-b(m)?);
    r.exact("[n] = [2][n-1] - [n-2]", &b(n)?, &(b(2)? * b(n - 1)? - b(n - 2)?));
    Ok(r)
}
