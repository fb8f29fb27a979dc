//! Definite integrals through the exact antiderivative, Jackson-type node sums
//! for the JS family, certified improper integrals, and integration by parts.

use num_traits::{One, Signed, Zero};

use num_traits::ToPrimitive;

use crate::arith::{pow_int, Q};
use crate::deform::DeformParams;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::series::{PolynomialExact, SpectralCalculus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `|q/p| < 1`, nodes `q^r a / p^(r+1)`.
    RatioBelowOne,
    /// `|p/q| < 1`, nodes `p^r a / q^(r+1)`.
    Mirrored,
}

#[derive(Clone, Debug)]
pub struct QuadratureSpec {
    pub params: DeformParams<Q>,
    /// `None` selects the geometric closed form (infinitely many nodes).
    pub terms: Option<usize>,
    pub regime: Regime,
}

impl QuadratureSpec {
    pub fn new(params: DeformParams<Q>, terms: Option<usize>, regime: Regime) -> Result<Self> {
        let s = QuadratureSpec { params, terms, regime };
        s.validate()?;
        Ok(s)
    }

    /// `(s, t)` with nodes `t^r a / s^(r+1)` and prefactor `s - t`.
    fn bases(&self) -> (Q, Q) {
        let (p, q) = (self.params.p().clone(), self.params.q().clone());
        match self.regime {
            Regime::RatioBelowOne => (p, q),
            Regime::Mirrored => (q, p),
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.params.is_js() {
            return Err(Error::InvalidParameter(
                "Jackson node sums are available for the jagannathan_srinivasa family only".into(),
            ));
        }
        let (s, t) = self.bases();
        if s.is_zero() {
            return Err(Error::InvalidRegime("node base must be nonzero".into()));
        }
        if (&t / &s).abs() >= Q::one() {
            let name = match self.regime {
                Regime::RatioBelowOne => "|q/p| < 1",
                Regime::Mirrored => "|p/q| < 1",
            };
            return Err(Error::InvalidRegime(format!("{name} is violated")));
        }
        Ok(())
    }
}

/// `I f(b) - I f(a)` with the spectral antiderivative.
pub fn definite_integral_poly(f: &PolynomialExact, a: &Q, b: &Q, params: &DeformParams<Q>) -> Result<Q> {
    let big = f.rpq_antiderivative(params)?;
    Ok(big.eval(b) - big.eval(a))
}

/// `(s - t) a sum_{r < terms} t^r/s^(r+1) f(t^r a / s^(r+1))`, summed in ascending `r`.
pub fn jackson_sum(f: impl Fn(&Q) -> Result<Q>, a: &Q, spec: &QuadratureSpec) -> Result<Q> {
    spec.validate()?;
    let terms = spec
        .terms
        .ok_or_else(|| Error::InvalidParameter("a finite node count is required for black-box integrands".into()))?;
    let (s, t) = spec.bases();
    let mut w = s.recip();
    let ratio = &t / &s;
    let mut acc = Q::zero();
    for _ in 0..terms {
        acc += &w * f(&(&w * a))?;
        w *= &ratio;
    }
    Ok((&s - &t) * a * acc)
}

/// Node sum of a polynomial, taken monomial by monomial through the geometric
/// series; finite `spec.terms` gives the same rational as [`jackson_sum`].
pub fn jackson_sum_poly(f: &PolynomialExact, a: &Q, spec: &QuadratureSpec) -> Result<Q> {
    spec.validate()?;
    // sum_{r<N} t^r/s^(r+1) (t^r a/s^(r+1))^n = a^n (1 - w^N) / (s^(n+1) (1 - w)), w = (t/s)^(n+1)
    let (s, t) = spec.bases();
    let ratio = &t / &s;
    let mut acc = Q::zero();
    for (n, c) in f.terms() {
        let k = n as i64 + 1;
        let w = pow_int(&ratio, k)?;
        let head = match spec.terms {
            Some(terms) => Q::one() - pow_int(&w, terms as i64)?,
            None => Q::one(),
        };
        acc += c * pow_int(a, n as i64)? * head / (pow_int(&s, k)? * (Q::one() - w));
    }
    Ok((&s - &t) * a * acc)
}

/// Claimed decay `|f(x)| x^γ0 <= M` near zero and `|f(x)| x^γ∞ <= M` near infinity.
#[derive(Clone, Debug)]
pub struct DecayCertificate {
    /// Exponent in `(0, 1)` for the nodes approaching zero.
    pub gamma_zero: Q,
    /// Exponent `> 1` for the nodes escaping to infinity.
    pub gamma_infinity: Q,
    pub bound: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImproperResult {
    pub value: Q,
    /// Nodes with index `j >= 0` (towards zero).
    pub zero_side: Q,
    /// Nodes with index `j < 0` (towards infinity).
    pub infinity_side: Q,
    pub terms: usize,
    /// Bound on the neglected tails, valid under the certificate.
    pub tail_bound: Q,
}

/// Rational `y >= x^a` for `x > 0`, refined by 60 bisection steps.
fn root_upper_bound(x: &Q, a: &Q) -> Q {
    // y^b >= x^num with a = num/b
    let bu = a.denom().to_usize().unwrap_or(1);
    let nn = a.numer().magnitude().to_usize().unwrap_or(0);
    let target = if a.is_negative() { num_traits::pow(x.recip(), nn) } else { num_traits::pow(x.clone(), nn) };
    let pw = |y: &Q| num_traits::pow(y.clone(), bu);
    let (mut lo, mut hi) = (Q::zero(), Q::one().max(target.clone()));
    for _ in 0..60 {
        let mid = (&lo + &hi) / Q::from_integer(2.into());
        if pw(&mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn holds_on_node(fx: &Q, x: &Q, gamma: &Q, m: &Q) -> bool {
    // |f|^b x^a <= M^b for γ = a/b
    let b = gamma.denom().to_usize().unwrap_or(1);
    let a = gamma.numer().to_i64().unwrap_or(0);
    let lhs = num_traits::pow(fx.abs(), b) * pow_int(x, a).unwrap_or_else(|_| Q::zero());
    lhs <= num_traits::pow(m.clone(), b)
}

/// Bilateral node sum `(s - t) sum_{|j| <= terms} x_j f(x_j)`, `x_j = t^j / s^(j+1)`.
pub fn improper_integral(
    f: impl Fn(&Q) -> Result<Q>,
    spec: &QuadratureSpec,
    cert: Option<&DecayCertificate>,
) -> Result<ImproperResult> {
    spec.validate()?;
    let cert = cert.ok_or_else(|| Error::ConvergenceUnverified("a decay certificate is required".into()))?;
    let zero_ok = cert.gamma_zero > Q::zero() && cert.gamma_zero < Q::one();
    if !zero_ok || cert.gamma_infinity <= Q::one() || cert.bound.is_negative() {
        return Err(Error::ConvergenceUnverified(
            "certificate needs 0 < γ0 < 1, γ∞ > 1 and M >= 0".into(),
        ));
    }
    let terms = spec.terms.unwrap_or(64);
    let (s, t) = spec.bases();
    let (s, t) = (s.abs(), t.abs());
    if spec.params.p().is_negative() || spec.params.q().is_negative() {
        return Err(Error::InvalidRegime("improper node sums need p, q > 0".into()));
    }
    let ratio = &t / &s;
    let node = |j: i64| -> Result<Q> { Ok(pow_int(&ratio, j)? / &s) };
    let mut zero_side = Q::zero();
    for j in 0..=terms as i64 {
        let x = node(j)?;
        let fx = f(&x)?;
        if !holds_on_node(&fx, &x, &cert.gamma_zero, &cert.bound) && x <= Q::one() {
            return Err(Error::ConvergenceUnverified(format!("certificate fails at node {x}")));
        }
        zero_side += &x * fx;
    }
    let mut infinity_side = Q::zero();
    for j in 1..=terms as i64 {
        let x = node(-j)?;
        let fx = f(&x)?;
        if !holds_on_node(&fx, &x, &cert.gamma_infinity, &cert.bound) && x >= Q::one() {
            return Err(Error::ConvergenceUnverified(format!("certificate fails at node {x}")));
        }
        infinity_side += &x * fx;
    }
    let pre = &s - &t;
    // zero side: sum_{j > J} M x_j^(1-γ0), geometric with ratio (t/s)^(1-γ0)
    let e0 = Q::one() - &cert.gamma_zero;
    let x_next = node(terms as i64 + 1)?;
    let r0 = root_upper_bound(&ratio, &e0);
    let tail0 = &cert.bound * root_upper_bound(&x_next, &e0) / (Q::one() - &r0);
    // infinity side: sum_{j > J} M x_{-j}^(1-γ∞), ratio (t/s)^(γ∞-1)
    let einf = &cert.gamma_infinity - Q::one();
    let x_far = node(-(terms as i64) - 1)?;
    let rinf = root_upper_bound(&ratio, &einf);
    let tailinf = &cert.bound * root_upper_bound(&x_far.recip(), &einf) / (Q::one() - &rinf);
    if r0 >= Q::one() || rinf >= Q::one() {
        return Err(Error::ConvergenceUnverified("tail ratio bound is not below one".into()));
    }
    Ok(ImproperResult {
        value: &pre * (&zero_side + &infinity_side),
        zero_side: &pre * zero_side,
        infinity_side: &pre * infinity_side,
        terms,
        tail_bound: pre.abs() * (tail0 + tailinf),
    })
}

/// `∫ f(pz) ∂g = f(b)g(b) - f(a)g(a) - ∫ g(qz) ∂f` on `[a, b]`.
///
/// Asserted for the JS family, where the spectral derivative is the
/// `(p,q)` difference quotient; measured otherwise.
pub fn integration_by_parts_check(
    f: &PolynomialExact,
    g: &PolynomialExact,
    a: &Q,
    b: &Q,
    params: &DeformParams<Q>,
) -> Result<Report> {
    let lhs = definite_integral_poly(&f.dilate(params.p()).mul(&g.rpq_derivative(params)?), a, b, params)?;
    let boundary = f.eval(b) * g.eval(b) - f.eval(a) * g.eval(a);
    let other = definite_integral_poly(&g.dilate(params.q()).mul(&f.rpq_derivative(params)?), a, b, params)?;
    let rhs = boundary - other;
    let mut r = Report::new("integration_by_parts");
    let name = "∫ f(pz) ∂g = [fg] - ∫ g(qz) ∂f";
    if params.is_js() {
        r.exact(name, &lhs, &rhs);
    } else {
        let res = &lhs - &rhs;
        r.measure(name, lhs, rhs, res);
    }
    Ok(r)
}

/// Identity suite for the quadrature layer.
pub fn suite(params: &DeformParams<Q>) -> Result<Report> {
    let mut r = Report::new("quadrature");
    let sample = PolynomialExact::from_coeffs((0..=12).map(|k| crate::arith::q(7 - 2 * k, 3 + k)));
    let (a, b) = (crate::arith::q(-2, 5), crate::arith::q(3, 2));
    let d = sample.rpq_derivative(params)?;
    r.exact("∫_a^b ∂f = f(b) - f(a)", &definite_integral_poly(&d, &a, &b, params)?, &(sample.eval(&b) - sample.eval(&a)));
    let lhs = definite_integral_poly(&sample, &a, &b, params)?;
    let rhs = definite_integral_poly(&sample, &Q::zero(), &b, params)? - definite_integral_poly(&sample, &Q::zero(), &a, params)?;
    r.exact("∫_a^b = ∫_0^b - ∫_0^a", &lhs, &rhs);
    r.exact("∫_a^a = 0", &definite_integral_poly(&sample, &a, &a, params)?, &Q::zero());
    let f = PolynomialExact::from_coeffs(vec![crate::arith::q(1, 2), Q::one(), crate::arith::q(-3, 4)]);
    let g = PolynomialExact::from_coeffs(vec![Q::zero(), crate::arith::q(2, 3), Q::zero(), Q::one()]);
    r.extend(integration_by_parts_check(&f, &g, &a, &b, params)?);

    if params.is_js() {
        let ratio_ok = (params.q() / params.p()).abs() < Q::one();
        if ratio_ok {
            let closed = QuadratureSpec::new(params.clone(), None, Regime::RatioBelowOne)?;
            let nums = params.numbers_up_to(9)?;
            for n in 0..=8usize {
                let zn = PolynomialExact::monomial(Q::one(), n);
                let got = jackson_sum_poly(&zn, &b, &closed)?;
                let want = pow_int(&b, n as i64 + 1)? / &nums[n + 1];
                r.exact(format!("Jackson sum of z^{n} = a^{}/[{}]", n + 1, n + 1), &got, &want);
            }
            // telescoping: ∫ over [(q/p)^(j+1), (q/p)^j] is one node
            let ratio = params.q() / params.p();
            for j in 0..3i64 {
                let hi = pow_int(&ratio, j)?;
                let lo = &hi * &ratio;
                let whole = jackson_sum_poly(&sample, &hi, &closed)? - jackson_sum_poly(&sample, &lo, &closed)?;
                let node = &hi / params.p();
                let single = (params.p() - params.q()) * &node * sample.eval(&node);
                r.exact(format!("sub-interval j = {j} is a single node"), &whole, &single);
            }
        }
    }
    Ok(r)
}
