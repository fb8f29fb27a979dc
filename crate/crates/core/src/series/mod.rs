//! Truncated power series, the spectral derivative/antiderivative, deformed
//! exponentials, trigonometric families, zigzag numbers, and the
//! Bernoulli/Euler/Genocchi generating functions.

mod poly;

pub use poly::PolynomialExact;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{choose2, Q, Scalar};
use crate::deform::DeformParams;
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Plain,
    /// Coefficient `n` stands for `c_n / [n]!`.
    Factorial,
}

/// Coefficients `c_0..c_M` of `z^offset, ..., z^(offset+M)`.
///
/// `offset` is nonzero only for the Laurent results of `csc` and `coth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Q>,
    normalization: Normalization,
    offset: i64,
}

#[derive(Serialize)]
struct RationalJson {
    num: String,
    den: String,
}

#[derive(Serialize)]
struct SeriesJson {
    order: usize,
    normalization: Normalization,
    #[serde(skip_serializing_if = "Option::is_none")]
    leading_exponent: Option<i64>,
    coefficients: Vec<RationalJson>,
}

impl Serialize for FormalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            normalization: self.normalization,
            leading_exponent: (self.offset != 0).then_some(self.offset),
            coefficients: self
                .coeffs
                .iter()
                .map(|c| RationalJson { num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

fn factorials(params: &DeformParams<Q>, n: usize) -> Result<Vec<Q>> {
    let f = params.factorials_up_to(n as i64)?;
    if let Some(k) = f.iter().position(|x| x.is_zero()) {
        return Err(Error::SingularDeformation(format!("[{k}]! = 0")));
    }
    Ok(f)
}

impl FormalSeries {
    pub fn new(coeffs: Vec<Q>, normalization: Normalization) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        FormalSeries { coeffs, normalization, offset: 0 }
    }

    pub fn plain(coeffs: Vec<Q>) -> Self {
        Self::new(coeffs, Normalization::Plain)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Exponent of the first stored coefficient.
    pub fn leading_exponent(&self) -> i64 {
        self.offset
    }

    pub fn is_laurent(&self) -> bool {
        self.offset != 0
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Stored coefficient at `z^n` (zero outside the stored window).
    pub fn coefficient(&self, n: i64) -> Q {
        let i = n - self.offset;
        if i < 0 {
            return Q::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Q::zero)
    }

    pub fn to_plain(&self, params: &DeformParams<Q>) -> Result<Self> {
        match self.normalization {
            Normalization::Plain => Ok(self.clone()),
            Normalization::Factorial => {
                let f = factorials(params, self.order())?;
                let coeffs = self.coeffs.iter().zip(&f).map(|(c, k)| c / k).collect();
                Ok(FormalSeries { coeffs, normalization: Normalization::Plain, offset: 0 })
            }
        }
    }

    pub fn to_normalized(&self, params: &DeformParams<Q>) -> Result<Self> {
        match self.normalization {
            Normalization::Factorial => Ok(self.clone()),
            Normalization::Plain => {
                if self.offset != 0 {
                    return Err(Error::InvalidParameter("Laurent series have no factorial normalization".into()));
                }
                let f = factorials(params, self.order())?;
                let coeffs = self.coeffs.iter().zip(&f).map(|(c, k)| c * k).collect();
                Ok(FormalSeries { coeffs, normalization: Normalization::Factorial, offset: 0 })
            }
        }
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.normalization != o.normalization {
            return Err(Error::InvalidParameter("series normalizations differ".into()));
        }
        if self.offset != o.offset {
            return Err(Error::InvalidParameter("series leading exponents differ".into()));
        }
        Ok(())
    }

    fn require_plain(&self, o: &Self) -> Result<()> {
        if self.normalization != Normalization::Plain || o.normalization != Normalization::Plain {
            return Err(Error::InvalidParameter("products and quotients need plain series".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let m = self.coeffs.len().min(o.coeffs.len());
        let coeffs = (0..m).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect();
        Ok(FormalSeries { coeffs, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.require_plain(o)?;
        let m = self.coeffs.len().min(o.coeffs.len());
        let mut coeffs = vec![Q::zero(); m];
        for (i, a) in self.coeffs.iter().take(m).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(m - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(FormalSeries { coeffs, normalization: Normalization::Plain, offset: self.offset + o.offset })
    }

    /// `self / o`; a vanishing constant term of `o` is a pole unless `laurent`.
    pub fn div(&self, o: &Self, laurent: bool) -> Result<Self> {
        self.require_plain(o)?;
        let k = o.coeffs.iter().position(|c| !c.is_zero()).ok_or_else(|| {
            Error::DivisionByZero("division by the zero series".into())
        })?;
        if k > 0 && !laurent {
            return Err(Error::PoleAtOrigin("divisor has zero constant term".into()));
        }
        let den = &o.coeffs[k..];
        let m = self.coeffs.len().min(den.len());
        let inv0 = den[0].recip();
        let mut out: Vec<Q> = Vec::with_capacity(m);
        for n in 0..m {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc -= &den[j] * &out[n - j];
            }
            out.push(acc * &inv0);
        }
        Ok(FormalSeries { coeffs: out, normalization: Normalization::Plain, offset: self.offset - o.offset - k as i64 })
    }

    /// `z ↦ f(λ z)`.
    pub fn dilate(&self, lambda: &Q) -> Self {
        let mut pw = if self.offset >= 0 {
            num_traits::pow(lambda.clone(), self.offset as usize)
        } else {
            num_traits::pow(lambda.recip(), (-self.offset) as usize)
        };
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pw);
            pw *= lambda;
        }
        FormalSeries { coeffs, ..self.clone() }
    }

    /// Keeps `c_n` for even (`parity = 0`) or odd (`parity = 1`) `n`.
    pub fn parity_part(&self, parity: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (i as i64 + self.offset).rem_euclid(2) == parity { c.clone() } else { Q::zero() })
            .collect();
        FormalSeries { coeffs, ..self.clone() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        FormalSeries { coeffs, ..self.clone() }
    }

    pub fn to_polynomial(&self) -> Result<PolynomialExact> {
        if self.offset != 0 || self.normalization != Normalization::Plain {
            return Err(Error::InvalidParameter("only plain power series convert to polynomials".into()));
        }
        Ok(PolynomialExact::from_coeffs(self.coeffs.clone()))
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*z^{}", i as i64 + self.offset))
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        let tag = match self.normalization {
            Normalization::Plain => "",
            Normalization::Factorial => " [/[n]!]",
        };
        write!(f, "{body} + O(z^{}){tag}", self.order() as i64 + 1 + self.offset)
    }
}

/// Spectral action `z^n ↦ [n] z^(n-1)` and its inverse `z^n ↦ z^(n+1)/[n+1]`.
pub trait SpectralCalculus: Sized {
    fn rpq_derivative(&self, params: &DeformParams<Q>) -> Result<Self>;
    fn rpq_antiderivative(&self, params: &DeformParams<Q>) -> Result<Self>;
}

impl SpectralCalculus for PolynomialExact {
    fn rpq_derivative(&self, params: &DeformParams<Q>) -> Result<Self> {
        let Some(d) = self.degree() else { return Ok(Self::zero()) };
        let nums = params.numbers_up_to(d as i64)?;
        Ok(PolynomialExact::from_coeffs((1..=d).map(|n| self.coeff(n) * &nums[n])))
    }

    fn rpq_antiderivative(&self, params: &DeformParams<Q>) -> Result<Self> {
        let Some(d) = self.degree() else { return Ok(Self::zero()) };
        let nums = params.numbers_up_to(d as i64 + 1)?;
        let mut out = PolynomialExact::zero();
        for (n, c) in self.terms() {
            let k = &nums[n + 1];
            if k.is_zero() {
                return Err(Error::SingularDeformation(format!("[{}] = 0", n + 1)));
            }
            out = out.add(&PolynomialExact::monomial(c / k, n + 1));
        }
        Ok(out)
    }
}

impl SpectralCalculus for FormalSeries {
    fn rpq_derivative(&self, params: &DeformParams<Q>) -> Result<Self> {
        if self.offset != 0 {
            return Err(Error::InvalidParameter("derivative of a Laurent series".into()));
        }
        let m = self.order();
        let coeffs = match self.normalization {
            Normalization::Factorial => self.coeffs[1..].to_vec(),
            Normalization::Plain => {
                let nums = params.numbers_up_to(m as i64)?;
                (1..=m).map(|n| &self.coeffs[n] * &nums[n]).collect()
            }
        };
        let coeffs = if coeffs.is_empty() { vec![Q::zero()] } else { coeffs };
        Ok(FormalSeries { coeffs, ..self.clone() })
    }

    fn rpq_antiderivative(&self, params: &DeformParams<Q>) -> Result<Self> {
        if self.offset != 0 {
            return Err(Error::InvalidParameter("antiderivative of a Laurent series".into()));
        }
        let m = self.order();
        let nums = params.numbers_up_to(m as i64 + 1)?;
        if let Some(k) = nums.iter().skip(1).position(|x| x.is_zero()) {
            return Err(Error::SingularDeformation(format!("[{}] = 0", k + 1)));
        }
        let mut coeffs = vec![Q::zero()];
        match self.normalization {
            Normalization::Factorial => coeffs.extend(self.coeffs.iter().cloned()),
            Normalization::Plain => coeffs.extend((0..=m).map(|n| &self.coeffs[n] / &nums[n + 1])),
        }
        Ok(FormalSeries { coeffs, ..self.clone() })
    }
}

pub fn rpq_derivative<T: SpectralCalculus>(f: &T, params: &DeformParams<Q>) -> Result<T> {
    f.rpq_derivative(params)
}

pub fn rpq_antiderivative<T: SpectralCalculus>(f: &T, params: &DeformParams<Q>) -> Result<T> {
    f.rpq_antiderivative(params)
}

/// Normalized coefficients `base^C(n,2)`, checked against vanishing factorials.
fn twisted_exponential(params: &DeformParams<Q>, base: &Q, order: usize) -> Result<FormalSeries> {
    factorials(params, order)?;
    let coeffs = (0..=order as i64).map(|n| base.powi(choose2(n))).collect::<Result<Vec<_>>>()?;
    Ok(FormalSeries::new(coeffs, Normalization::Factorial))
}

/// `e_R(z) = sum xi1^C(n,2) z^n / [n]!`, factorial-normalized.
pub fn exp_lower(params: &DeformParams<Q>, order: usize) -> Result<FormalSeries> {
    twisted_exponential(params, params.xi1(), order)
}

/// `E_R(z) = sum xi2^C(n,2) z^n / [n]!`, factorial-normalized.
pub fn exp_upper(params: &DeformParams<Q>, order: usize) -> Result<FormalSeries> {
    twisted_exponential(params, params.xi2(), order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trig {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Sec,
    Csc,
    Tanh,
    Sech,
    Coth,
}

/// Which exponential a trigonometric function is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// From `e_R` (lower-case names).
    Lower,
    /// From `E_R` (upper-case names).
    Upper,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "lower" => Ok(Family::Lower),
            "upper" => Ok(Family::Upper),
            _ => Err(Error::Parse(format!("unknown convention {s:?} (lower|upper)"))),
        }
    }
}

impl Trig {
    /// `sin` selects the lower family, `SIN` the upper one.
    pub fn parse(s: &str) -> Result<(Trig, Family)> {
        let fam = if s.chars().all(|c| c.is_ascii_uppercase()) {
            Family::Upper
        } else if s.chars().all(|c| c.is_ascii_lowercase()) {
            Family::Lower
        } else {
            return Err(Error::Parse(format!("unknown function {s:?}")));
        };
        let t = match s.to_ascii_lowercase().as_str() {
            "sin" => Trig::Sin,
            "cos" => Trig::Cos,
            "sinh" => Trig::Sinh,
            "cosh" => Trig::Cosh,
            "tan" => Trig::Tan,
            "sec" => Trig::Sec,
            "csc" => Trig::Csc,
            "tanh" => Trig::Tanh,
            "sech" => Trig::Sech,
            "coth" => Trig::Coth,
            _ => return Err(Error::Parse(format!("unknown function {s:?}"))),
        };
        Ok((t, fam))
    }
}

fn exponential(params: &DeformParams<Q>, family: Family, order: usize) -> Result<FormalSeries> {
    match family {
        Family::Lower => exp_lower(params, order),
        Family::Upper => exp_upper(params, order),
    }
}

/// Even/odd part of the exponential with alternating signs when `alternate`.
fn split(e: &FormalSeries, parity: i64, alternate: bool) -> FormalSeries {
    let part = e.parity_part(parity);
    if !alternate {
        return part;
    }
    let coeffs = part
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| if (n as i64 / 2) % 2 == 1 { -c } else { c.clone() })
        .collect();
    FormalSeries { coeffs, ..part }
}

/// Trigonometric and hyperbolic series.
///
/// `sin, cos, sinh, cosh` are returned factorial-normalized; quotient
/// functions are returned plain. `csc` and `coth` need `laurent = true`.
pub fn trig_series(params: &DeformParams<Q>, which: Trig, family: Family, order: usize, laurent: bool) -> Result<FormalSeries> {
    let e = exponential(params, family, order)?;
    let cos = || split(&e, 0, true);
    let sin = || split(&e, 1, true);
    let cosh = || split(&e, 0, false);
    let sinh = || split(&e, 1, false);
    let one = FormalSeries::plain(vec![Q::one()]);
    let pl = |s: FormalSeries| s.to_plain(params);
    Ok(match which {
        Trig::Cos => cos(),
        Trig::Sin => sin(),
        Trig::Cosh => cosh(),
        Trig::Sinh => sinh(),
        Trig::Tan => pl(sin())?.div(&pl(cos())?, false)?,
        Trig::Tanh => pl(sinh())?.div(&pl(cosh())?, false)?,
        Trig::Sec => {
            let c = pl(cos())?;
            pad(&one, c.order()).div(&c, false)?
        }
        Trig::Sech => {
            let c = pl(cosh())?;
            pad(&one, c.order()).div(&c, false)?
        }
        Trig::Csc => {
            let s = pl(sin())?;
            pad(&one, s.order()).div(&s, laurent).map_err(|e| pole_name(e, "csc"))?
        }
        Trig::Coth => pl(cosh())?.div(&pl(sinh())?, laurent).map_err(|e| pole_name(e, "coth"))?,
    })
}

fn pole_name(e: Error, name: &str) -> Error {
    match e {
        Error::PoleAtOrigin(_) => Error::PoleAtOrigin(format!("{name} has a pole at z = 0; request Laurent mode")),
        other => other,
    }
}

fn pad(s: &FormalSeries, order: usize) -> FormalSeries {
    let mut coeffs = s.coeffs.clone();
    coeffs.resize(order + 1, Q::zero());
    FormalSeries { coeffs, ..s.clone() }
}

/// `A_0, ..., A_{count-1}`: normalized coefficients of `sec_R + tan_R`.
pub fn zigzag_numbers(params: &DeformParams<Q>, count: usize) -> Result<Vec<Q>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let order = count - 1;
    let sec = trig_series(params, Trig::Sec, Family::Lower, order, false)?;
    let tan = trig_series(params, Trig::Tan, Family::Lower, order, false)?;
    Ok(sec.add(&tan)?.to_normalized(params)?.coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyFamily {
    Bernoulli,
    Euler,
    Genocchi,
}

impl PolyFamily {
    pub fn parse(s: &str) -> Result<PolyFamily> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(PolyFamily::Bernoulli),
            "euler" => Ok(PolyFamily::Euler),
            "genocchi" => Ok(PolyFamily::Genocchi),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PolyFamily::Bernoulli => "bernoulli",
            PolyFamily::Euler => "euler",
            PolyFamily::Genocchi => "genocchi",
        }
    }
}

/// Values at `x` of the deformed Bernoulli, Euler or Genocchi polynomials of
/// degree `0..=order`, read off as normalized coefficients of
/// `z/(e(z)-1) e(xz)`, `[2]/(e(z)+1) e(xz)` or `[2] z/(e(z)+1) e(xz)`.
pub fn generating_polynomials(
    params: &DeformParams<Q>,
    family: PolyFamily,
    x: &Q,
    order: usize,
    convention: Family,
) -> Result<Vec<Q>> {
    let e = exponential(params, convention, order + 1)?.to_plain(params)?;
    let ex = e.dilate(x).truncate(order);
    let two = params.number(2)?;
    let core = match family {
        PolyFamily::Bernoulli => {
            // (e - 1)/z
            let h = FormalSeries::plain(e.coeffs[1..].to_vec());
            if h.coeffs[0].is_zero() {
                return Err(Error::DivisionByZero("e(z) - 1 has zero linear term".into()));
            }
            pad(&FormalSeries::plain(vec![Q::one()]), order).div(&h, false)?
        }
        PolyFamily::Euler | PolyFamily::Genocchi => {
            let mut d = e.truncate(order);
            d.coeffs[0] += Q::one();
            let num = if family == PolyFamily::Euler {
                pad(&FormalSeries::plain(vec![two.clone()]), order)
            } else {
                let mut c = vec![Q::zero(); order + 1];
                if order >= 1 {
                    c[1] = two.clone();
                }
                FormalSeries::plain(c)
            };
            num.div(&d, false)?
        }
    };
    Ok(core.mul(&ex)?.to_normalized(params)?.coeffs)
}

/// Ladder relations `A†A z^n = [n] z^n`, `AA† z^n = [n+1] z^n` with `A = ∂_R`, `A† = z·`.
pub fn operator_algebra_check(params: &DeformParams<Q>, n_max: usize) -> Result<Report> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let mut r = Report::new("operator_algebra");
    let nums = params.numbers_up_to(n_max as i64 + 1)?;
    for n in 0..=n_max {
        let zn = PolynomialExact::monomial(Q::one(), n);
        let ada = zn.rpq_derivative(params)?.mul(&PolynomialExact::z());
        let aad = zn.mul(&PolynomialExact::z()).rpq_derivative(params)?;
        r.exact(format!("A†A z^{n} = [{n}] z^{n}"), &ada.coeff(n), &nums[n]);
        r.exact(format!("AA† z^{n} = [{}] z^{n}", n + 1), &aad.coeff(n), &nums[n + 1]);
        r.exact(format!("(AA† - A†A) z^{n}"), &(aad.coeff(n) - ada.coeff(n)), &(&nums[n + 1] - &nums[n]));
    }
    Ok(r)
}

/// Identity suite for the series layer at one parameter set.
pub fn suite(params: &DeformParams<Q>, order: usize) -> Result<Report> {
    let mut r = Report::new("series");
    let nums = params.numbers_up_to(64)?;
    let mut spectral = true;
    for n in 1..=64usize {
        let d = PolynomialExact::monomial(Q::one(), n).rpq_derivative(params)?;
        spectral &= d == PolynomialExact::monomial(nums[n].clone(), n - 1);
    }
    r.push("∂ z^n = [n] z^(n-1), n <= 64", spectral, "", "", if spectral { "0" } else { "mismatch" });

    let f = PolynomialExact::from_coeffs((0..=order).map(|k| crate::arith::q(k as i64 * 3 - 5, k as i64 + 2)));
    let di = f.rpq_antiderivative(params)?.rpq_derivative(params)?;
    r.push("∂ I f = f", di == f, &di, &f, di.sub(&f));
    let id = f.rpq_derivative(params)?.rpq_antiderivative(params)?;
    let f0 = f.sub(&PolynomialExact::constant(f.coeff(0)));
    r.push("I ∂ f = f - f(0)", id == f0, &id, &f0, id.sub(&f0));

    for (fam, base, name) in [(Family::Lower, params.xi1(), "e"), (Family::Upper, params.xi2(), "E")] {
        let lambda = crate::arith::q(2, 3);
        let e = exponential(params, fam, order + 1)?.to_plain(params)?;
        let lhs = e.dilate(&lambda).rpq_derivative(params)?;
        let rhs = e.dilate(&(&lambda * base)).truncate(order).scale(&lambda);
        r.push(format!("∂ {name}(λz) = λ {name}(λ ξ z)"), lhs == rhs, &lhs, &rhs, if lhs == rhs { "0" } else { "mismatch" });

        // coefficient-level Euler identity e(iz) = cos + i sin
        let en = exponential(params, fam, order)?;
        let cos = trig_series(params, Trig::Cos, fam, order, false)?;
        let sin = trig_series(params, Trig::Sin, fam, order, false)?;
        let mut ok = true;
        for (n, c) in en.coeffs().iter().enumerate() {
            // i^n = (re, im)
            let (re, im) = match n % 4 {
                0 => (c.clone(), Q::zero()),
                1 => (Q::zero(), c.clone()),
                2 => (-c, Q::zero()),
                _ => (Q::zero(), -c),
            };
            ok &= re == cos.coefficient(n as i64) && im == sin.coefficient(n as i64);
        }
        r.push(format!("{name}(iz) = cos + i sin (coefficientwise)"), ok, "", "", if ok { "0" } else { "mismatch" });
    }

    let e16 = generating_polynomials(params, PolyFamily::Euler, &Q::zero(), 16, Family::Lower)?;
    let g17 = generating_polynomials(params, PolyFamily::Genocchi, &Q::zero(), 17, Family::Lower)?;
    let nums17 = params.numbers_up_to(17)?;
    let link = (0..=16).all(|n| g17[n + 1] == &nums17[n + 1] * &e16[n]);
    r.push("G_(n+1) = [n+1] E_n, n <= 16", link, "", "", if link { "0" } else { "mismatch" });
    r.exact("G_0 = 0", &g17[0], &Q::zero());

    r.extend(operator_algebra_check(params, order)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn js() -> DeformParams<Q> {
        DeformParams::js(qi(1), q(1, 2)).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let f = PolynomialExact::from_coeffs(vec![qi(0), qi(1), qi(2)]);
        let d = rpq_derivative(&f, &js()).unwrap();
        assert_eq!(d, PolynomialExact::from_coeffs(vec![qi(1), qi(3)]));
        assert!(rpq_derivative(&PolynomialExact::one(), &js()).unwrap().is_zero());
        let z3 = PolynomialExact::monomial(qi(1), 3);
        assert_eq!(rpq_derivative(&z3, &js()).unwrap(), PolynomialExact::monomial(q(7, 4), 2));
    }

    #[test]
    fn antiderivative_examples() {
        let a = rpq_antiderivative(&PolynomialExact::one(), &js()).unwrap();
        assert_eq!(a, PolynomialExact::z());
        let z2 = PolynomialExact::monomial(qi(1), 2);
        assert_eq!(rpq_antiderivative(&z2, &js()).unwrap(), PolynomialExact::monomial(q(4, 7), 3));
        let z5 = PolynomialExact::monomial(qi(1), 5);
        let back = rpq_antiderivative(&rpq_derivative(&z5, &js()).unwrap(), &js()).unwrap();
        assert_eq!(back, z5);
    }

    #[test]
    fn exponential_examples() {
        let e = exp_lower(&js(), 4).unwrap().to_plain(&js()).unwrap();
        assert_eq!(e.coefficient(0), qi(1));
        assert_eq!(e.coefficient(2), q(2, 3));
        let params = js().with_twist(qi(1), q(1, 2));
        let big = exp_upper(&params, 4).unwrap().to_plain(&params).unwrap();
        assert_eq!(big.coefficient(2), q(1, 3));
    }

    #[test]
    fn series_calculus_both_normalizations() {
        let p = js();
        let e = exp_lower(&p, 6).unwrap();
        let pe = e.to_plain(&p).unwrap();
        let d1 = e.rpq_derivative(&p).unwrap().to_plain(&p).unwrap();
        let d2 = pe.rpq_derivative(&p).unwrap();
        assert_eq!(d1, d2);
        let i1 = e.rpq_antiderivative(&p).unwrap().to_plain(&p).unwrap();
        let i2 = pe.rpq_antiderivative(&p).unwrap();
        assert_eq!(i1, i2);
    }

    #[test]
    fn classical_trig() {
        let c = DeformParams::classical();
        let tan = trig_series(&c, Trig::Tan, Family::Lower, 7, false).unwrap();
        assert_eq!(tan.coefficient(1), qi(1));
        assert_eq!(tan.coefficient(3), q(1, 3));
        assert_eq!(tan.coefficient(5), q(2, 15));
        let cos = trig_series(&c, Trig::Cos, Family::Lower, 4, false).unwrap();
        assert_eq!(cos.coefficient(0), qi(1));
        assert!(matches!(
            trig_series(&c, Trig::Csc, Family::Lower, 5, false),
            Err(Error::PoleAtOrigin(_))
        ));
        let csc = trig_series(&c, Trig::Csc, Family::Lower, 5, true).unwrap();
        assert_eq!(csc.leading_exponent(), -1);
        assert_eq!(csc.coefficient(-1), qi(1));
        assert_eq!(csc.coefficient(1), q(1, 6));
        let coth = trig_series(&c, Trig::Coth, Family::Upper, 5, true).unwrap();
        assert_eq!(coth.coefficient(1), q(1, 3));
    }

    #[test]
    fn zigzag_classical() {
        let a = zigzag_numbers(&DeformParams::classical(), 8).unwrap();
        let expect: Vec<Q> = [1, 1, 1, 2, 5, 16, 61, 272].iter().map(|&k| qi(k)).collect();
        assert_eq!(a, expect);
        assert_eq!(zigzag_numbers(&js(), 1).unwrap(), vec![qi(1)]);
        assert!(zigzag_numbers(&js(), 0).is_err());
    }

    #[test]
    fn bernoulli_classical() {
        let b = generating_polynomials(&DeformParams::classical(), PolyFamily::Bernoulli, &qi(0), 4, Family::Lower).unwrap();
        assert_eq!(b, vec![qi(1), q(-1, 2), q(1, 6), qi(0), q(-1, 30)]);
        let b1 = generating_polynomials(&DeformParams::classical(), PolyFamily::Bernoulli, &qi(1), 2, Family::Lower).unwrap();
        assert_eq!(b1, vec![qi(1), q(1, 2), q(1, 6)]);
    }

    #[test]
    fn euler_classical_at_half() {
        // 2^n E_n(1/2) are the Euler numbers 1, 0, -1, 0, 5
        let e = generating_polynomials(&DeformParams::classical(), PolyFamily::Euler, &q(1, 2), 4, Family::Lower).unwrap();
        let scaled: Vec<Q> = e.iter().enumerate().map(|(n, v)| v * qi(1 << n)).collect();
        assert_eq!(scaled, vec![qi(1), qi(0), qi(-1), qi(0), qi(5)]);
    }

    #[test]
    fn operator_algebra() {
        let r = operator_algebra_check(&js(), 4).unwrap();
        assert!(r.all_passed());
        assert!(operator_algebra_check(&js(), 0).is_err());
        let z2 = PolynomialExact::monomial(qi(1), 2);
        let aad = z2.mul(&PolynomialExact::z()).rpq_derivative(&js()).unwrap();
        assert_eq!(aad.coeff(2), q(7, 4));
    }

    #[test]
    fn suite_passes() {
        assert!(suite(&js(), 8).unwrap().all_passed());
        assert!(suite(&DeformParams::classical(), 8).unwrap().all_passed());
    }

    #[test]
    fn mixing_normalizations_rejected() {
        let p = js();
        let a = exp_lower(&p, 3).unwrap();
        let b = a.to_plain(&p).unwrap();
        assert!(a.add(&b).is_err());
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn json_shape() {
        let s = FormalSeries::plain(vec![qi(1), q(-1, 2)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":1,"normalization":"plain","coefficients":[{"num":"1","den":"1"},{"num":"-1","den":"2"}]}"#);
    }
}
