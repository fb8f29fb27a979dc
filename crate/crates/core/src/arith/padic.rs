//! Truncated p-adic numbers in floating (relative precision) form.
//!
//! A nonzero value is `p^v * u` where the unit `u` is known modulo `p^N`.
//! Addition keeps the absolute precision `min(v_a + N_a, v_b + N_b)`;
//! products and quotients keep the smaller relative precision.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{require_prime, uint_valuation, Q};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    precision: u32,
    valuation: i64,
    unit: BigUint,
    zero: bool,
}

/// JSON form `{prime, precision, valuation, digits}`; `valuation` is null for zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub prime: u64,
    pub precision: u32,
    pub valuation: Option<i64>,
    pub digits: Vec<u64>,
}

fn ppow(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

fn mod_floor(x: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    x.mod_floor(&mi).to_biguint().expect("non-negative residue")
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let ai = BigInt::from_biguint(Sign::Plus, a.clone());
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    let g = ai.extended_gcd(&mi);
    debug_assert!(g.gcd.is_one(), "unit expected");
    mod_floor(&g.x, m)
}

fn check_precision(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("precision must be positive".into()))
    } else {
        Ok(())
    }
}

/// `true` when `v > 1/(p-1)`.
pub(crate) fn above_exp_radius(v: i64, p: u64) -> bool {
    (p as i64 - 1) * v > 1
}

impl PadicNumber {
    pub fn zero(prime: u64, precision: u32) -> Self {
        PadicNumber { prime, precision, valuation: 0, unit: BigUint::zero(), zero: true }
    }

    pub fn one(prime: u64, precision: u32) -> Self {
        PadicNumber { prime, precision, valuation: 0, unit: BigUint::one(), zero: false }
    }

    pub fn from_rational(x: &Q, prime: u64, precision: u32) -> Result<Self> {
        require_prime(prime)?;
        check_precision(precision)?;
        if x.is_zero() {
            return Ok(Self::zero(prime, precision));
        }
        let vn = super::rational::int_valuation(x.numer(), prime);
        let vd = super::rational::int_valuation(x.denom(), prime);
        let pb = BigInt::from(prime);
        let a = x.numer() / num_traits::pow(pb.clone(), vn as usize);
        let b = x.denom() / num_traits::pow(pb, vd as usize);
        let m = ppow(prime, precision);
        let a = mod_floor(&a, &m);
        let b = mod_floor(&b, &m);
        let unit = (a * mod_inverse(&b, &m)) % &m;
        Ok(PadicNumber { prime, precision, valuation: vn - vd, unit, zero: false })
    }

    pub fn from_i64(n: i64, prime: u64, precision: u32) -> Result<Self> {
        Self::from_rational(&Q::from_integer(BigInt::from(n)), prime, precision)
    }

    /// Builds `p^v * s` from a residue `s` modulo `p^m`.
    fn from_scaled(prime: u64, v: i64, s: BigUint, m: u32, cap: u32) -> Self {
        if s.is_zero() {
            return Self::zero(prime, cap);
        }
        let k = uint_valuation(&s, prime);
        let rel = (m - k).min(cap);
        let unit = (s / ppow(prime, k)) % ppow(prime, rel);
        PadicNumber { prime, precision: rel, valuation: v + k as i64, unit, zero: false }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Relative precision in digits.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `None` for the zero element.
    pub fn valuation(&self) -> Option<i64> {
        if self.zero {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// `v + N`, the power of `p` modulo which the value is known.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.precision as i64)
    }

    pub fn unit_part(&self) -> &BigUint {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.zero && self.valuation == 0
    }

    /// `p^(-v)`, or 0 for the zero element.
    pub fn norm(&self) -> Q {
        if self.zero {
            return Q::zero();
        }
        let p = BigInt::from(self.prime);
        if self.valuation >= 0 {
            Q::new(BigInt::one(), num_traits::pow(p, self.valuation as usize))
        } else {
            Q::from_integer(num_traits::pow(p, (-self.valuation) as usize))
        }
    }

    /// Base-p digits of the unit, least significant first, exactly `N` of them.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.precision as usize);
        if self.zero {
            return out;
        }
        let pb = BigUint::from(self.prime);
        let mut m = self.unit.clone();
        for _ in 0..self.precision {
            let (d, r) = m.div_rem(&pb);
            out.push(r.to_u64().unwrap_or(0));
            m = d;
        }
        out
    }

    /// The rational `p^v * u` with `0 <= u < p^N`.
    pub fn to_rational(&self) -> Q {
        if self.zero {
            return Q::zero();
        }
        let u = Q::from_integer(BigInt::from_biguint(Sign::Plus, self.unit.clone()));
        u * self.norm().recip()
    }

    /// Same value with relative precision lowered to at most `n`.
    pub fn with_precision(&self, n: u32) -> Self {
        if self.zero {
            return Self::zero(self.prime, n);
        }
        if n >= self.precision {
            return self.clone();
        }
        let unit = &self.unit % ppow(self.prime, n);
        PadicNumber { unit, precision: n, ..self.clone() }
    }

    fn same_prime(&self, o: &Self) -> Result<()> {
        if self.prime == o.prime {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("mixed primes {} and {}", self.prime, o.prime)))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        if self.zero {
            return Ok(o.clone());
        }
        if o.zero {
            return Ok(self.clone());
        }
        let v = self.valuation.min(o.valuation);
        let abs = (self.valuation + self.precision as i64).min(o.valuation + o.precision as i64);
        let m = (abs - v) as u32;
        let modulus = ppow(self.prime, m);
        let lift = |x: &Self| (&x.unit * ppow(x.prime, (x.valuation - v) as u32)) % &modulus;
        let s = (lift(self) + lift(o)) % &modulus;
        let cap = self.precision.max(o.precision);
        let mut r = Self::from_scaled(self.prime, v, s, m, cap);
        if r.zero {
            r.precision = self.precision.min(o.precision);
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        if self.zero {
            return self.clone();
        }
        let m = ppow(self.prime, self.precision);
        PadicNumber { unit: (&m - &self.unit) % &m, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        let n = self.precision.min(o.precision);
        if self.zero || o.zero {
            return Ok(Self::zero(self.prime, n));
        }
        let unit = (&self.unit * &o.unit) % ppow(self.prime, n);
        Ok(PadicNumber {
            prime: self.prime,
            precision: n,
            valuation: self.valuation + o.valuation,
            unit,
            zero: false,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.zero {
            return Err(Error::DivisionByZero("inverse of the p-adic zero".into()));
        }
        let m = ppow(self.prime, self.precision);
        Ok(PadicNumber { unit: mod_inverse(&self.unit, &m), valuation: -self.valuation, ..self.clone() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        self.mul(&o.inv()?)
    }

    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(self.prime, self.precision));
        }
        if self.zero {
            return if n > 0 {
                Ok(self.clone())
            } else {
                Err(Error::DivisionByZero("zero to a negative power".into()))
            };
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        let m = ppow(self.prime, self.precision);
        Ok(PadicNumber {
            unit: base.unit.modpow(&BigUint::from(e), &m),
            valuation: base.valuation * e as i64,
            ..base
        })
    }

    /// Scales by an integer exactly (no precision bookkeeping beyond `mul`).
    pub fn mul_i64(&self, k: i64) -> Result<Self> {
        let kk = Self::from_i64(k, self.prime, self.precision)?;
        self.mul(&kk)
    }

    /// Agreement modulo the joint absolute precision.
    pub fn eq_to_precision(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// `v(self - o) >= digits`, with an exact zero difference counting as agreement.
    pub fn agrees_to(&self, o: &Self, digits: i64) -> Result<bool> {
        Ok(match self.sub(o)?.valuation() {
            None => true,
            Some(v) => v >= digits,
        })
    }

    /// `exp(x)`, defined for `v(x) > 1/(p-1)`.
    ///
    /// The series stops once the lower bound `n v - (n-1)/(p-1)` for
    /// `v(x^n/n!)` reaches the absolute precision of the result.
    pub fn exp(&self) -> Result<Self> {
        let p = self.prime;
        if self.zero {
            return Ok(Self::one(p, self.precision));
        }
        let v = self.valuation;
        if !above_exp_radius(v, p) {
            return Err(Error::ConvergenceDomain(format!(
                "exp needs |x|_{p} < {p}^(-1/({p}-1)), got valuation {v}"
            )));
        }
        let target = (self.precision as i64).min(v + self.precision as i64);
        let pm1 = p as i64 - 1;
        let mut sum = Self::one(p, self.precision);
        let mut term = Self::one(p, self.precision);
        let mut n: i64 = 1;
        loop {
            // n v - (n-1)/(p-1) >= target, kept in integers
            if n * v * pm1 - (n - 1) >= target * pm1 {
                break;
            }
            term = term.mul(self)?.div(&Self::from_i64(n, p, self.precision)?)?;
            sum = sum.add(&term)?;
            n += 1;
        }
        Ok(sum.with_precision(target.max(1) as u32))
    }

    /// `log(u)`, defined for `|u - 1|_p < 1`.
    pub fn log(&self) -> Result<Self> {
        let p = self.prime;
        let one = Self::one(p, self.precision);
        let y = self.sub(&one)?;
        let v = match y.valuation() {
            None => return Ok(Self::zero(p, self.precision)),
            Some(v) => v,
        };
        if v < 1 || self.zero {
            return Err(Error::ConvergenceDomain(format!("log needs |u - 1|_{p} < 1, got v(u-1) = {v}")));
        }
        let target = y.absolute_precision().unwrap_or(self.precision as i64);
        let mut sum = Self::zero(p, self.precision);
        let mut power = one;
        let mut n: i64 = 1;
        loop {
            let logn = {
                let (mut k, mut t) = (0i64, n);
                while t >= p as i64 {
                    t /= p as i64;
                    k += 1;
                }
                k
            };
            if n * v - logn >= target {
                break;
            }
            power = power.mul(&y)?;
            let mut term = power.div(&Self::from_i64(n, p, self.precision)?)?;
            if n % 2 == 0 {
                term = term.neg();
            }
            sum = sum.add(&term)?;
            n += 1;
        }
        Ok(sum)
    }

    /// `q^x = exp(x log q)`, defined for `|q - 1|_p < p^(-1/(p-1))`.
    pub fn power(&self, x: &Self) -> Result<Self> {
        let p = self.prime;
        let d = self.sub(&Self::one(p, self.precision))?;
        if let Some(v) = d.valuation() {
            if !above_exp_radius(v, p) {
                return Err(Error::ConvergenceDomain(format!(
                    "q^x needs |q - 1|_{p} < {p}^(-1/({p}-1)), got v(q-1) = {v}"
                )));
            }
        }
        if x.is_zero() {
            return Ok(Self::one(p, self.precision));
        }
        x.mul(&self.log()?)?.exp()
    }

    pub fn to_json(&self) -> PadicJson {
        PadicJson {
            prime: self.prime,
            precision: self.precision,
            valuation: self.valuation(),
            digits: self.digits(),
        }
    }

    pub fn from_json(j: &PadicJson) -> Result<Self> {
        require_prime(j.prime)?;
        check_precision(j.precision)?;
        let Some(v) = j.valuation else {
            return Ok(Self::zero(j.prime, j.precision));
        };
        if j.digits.len() != j.precision as usize
            || j.digits.iter().any(|&d| d >= j.prime)
            || j.digits.first() == Some(&0)
        {
            return Err(Error::Parse("malformed p-adic digit list".into()));
        }
        let mut unit = BigUint::zero();
        for &d in j.digits.iter().rev() {
            unit = unit * j.prime + d;
        }
        Ok(PadicNumber { prime: j.prime, precision: j.precision, valuation: v, unit, zero: false })
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        if self.zero {
            return write!(f, "0 [{} digits]", self.precision);
        }
        write!(f, "{p}^{} * (", self.valuation)?;
        for (i, d) in self.digits().iter().enumerate() {
            match i {
                0 => write!(f, "{d}")?,
                1 => write!(f, " + {d}*{p}")?,
                _ => write!(f, " + {d}*{p}^{i}")?,
            }
        }
        write!(f, ") [{} digits]", self.precision)
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PadicJson::deserialize(d)?;
        PadicNumber::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{q, qi};
    use proptest::prelude::*;

    fn pn(n: i64, d: i64, p: u64, prec: u32) -> PadicNumber {
        PadicNumber::from_rational(&q(n, d), p, prec).unwrap()
    }

    #[test]
    fn embedding_resums() {
        let x = pn(2, 3, 5, 8);
        let m = Q::from_integer(num_traits::pow(BigInt::from(5), 8));
        let r = x.to_rational();
        let diff = (r * qi(3) - qi(2)) / m;
        assert!(diff.is_integer());
    }

    #[test]
    fn valuation_and_norm() {
        let x = pn(18, 1, 3, 10);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.norm(), q(1, 9));
        assert_eq!(PadicNumber::zero(3, 4).norm(), qi(0));
        assert_eq!(pn(4, 1, 3, 5).norm(), qi(1));
    }

    #[test]
    fn doubling_raises_valuation_at_two() {
        let x = pn(5, 1, 2, 10);
        let y = x.add(&x).unwrap();
        assert!(y.valuation().unwrap() > x.valuation().unwrap());
    }

    #[test]
    fn one_plus_p_times_one_minus_p() {
        for p in [2u64, 3, 5, 7] {
            let a = pn(1 + p as i64, 1, p, 12);
            let b = pn(1 - p as i64, 1, p, 12);
            let c = pn(1 - (p * p) as i64, 1, p, 12);
            assert!(a.mul(&b).unwrap().eq_to_precision(&c).unwrap());
        }
    }

    #[test]
    fn mixed_primes_rejected() {
        let a = pn(1, 1, 3, 4);
        let b = pn(1, 1, 5, 4);
        assert!(matches!(a.add(&b), Err(Error::InvalidParameter(_))));
        assert!(matches!(a.mul(&b), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cancellation_lowers_precision() {
        let a = pn(1, 1, 5, 8);
        let b = pn(1 + 25, 1, 5, 8);
        let d = b.sub(&a).unwrap();
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.precision(), 6);
        assert_eq!(d.absolute_precision(), Some(8));
    }

    #[test]
    fn exp_log_basics() {
        let z = PadicNumber::zero(5, 8);
        assert_eq!(z.exp().unwrap(), PadicNumber::one(5, 8));
        assert!(PadicNumber::one(5, 8).log().unwrap().is_zero());
        let p5 = pn(5, 1, 5, 8);
        let lhs = p5.exp().unwrap().mul(&p5.exp().unwrap()).unwrap();
        let rhs = pn(10, 1, 5, 8).exp().unwrap();
        assert!(lhs.eq_to_precision(&rhs).unwrap());
    }

    #[test]
    fn exp_domain_enforced() {
        assert!(matches!(pn(1, 1, 5, 8).exp(), Err(Error::ConvergenceDomain(_))));
        assert!(matches!(pn(2, 1, 2, 8).exp(), Err(Error::ConvergenceDomain(_))));
        assert!(pn(4, 1, 2, 8).exp().is_ok());
        assert!(matches!(pn(2, 1, 5, 8).log(), Err(Error::ConvergenceDomain(_))));
    }

    #[test]
    fn exp_matches_independent_series() {
        // exp(3) at p = 3 against a rational partial sum with a generous number of terms
        let x = qi(3);
        let mut sum = qi(0);
        let mut term = qi(1);
        for n in 0..80 {
            if n > 0 {
                term = term * &x / qi(n);
            }
            sum += &term;
        }
        let oracle = PadicNumber::from_rational(&sum, 3, 16).unwrap();
        let got = pn(3, 1, 3, 16).exp().unwrap();
        assert!(got.eq_to_precision(&oracle).unwrap());
    }

    #[test]
    fn power_cases() {
        let qv = pn(6, 1, 5, 8);
        let zero = PadicNumber::zero(5, 8);
        assert_eq!(qv.power(&zero).unwrap(), PadicNumber::one(5, 8));
        assert!(qv.power(&pn(1, 1, 5, 8)).unwrap().eq_to_precision(&qv).unwrap());
        let sq = qv.power(&pn(2, 1, 5, 8)).unwrap();
        assert!(sq.eq_to_precision(&qv.mul(&qv).unwrap()).unwrap());
        let half = qv.power(&pn(1, 2, 5, 8)).unwrap();
        assert!(half.mul(&half).unwrap().eq_to_precision(&qv).unwrap());
    }

    #[test]
    fn text_and_json() {
        let x = pn(7, 1, 5, 3);
        assert_eq!(x.to_string(), "5^0 * (2 + 1*5 + 0*5^2) [3 digits]");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"prime":5,"precision":3,"valuation":0,"digits":[2,1,0]}"#);
        let back: PadicNumber = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    fn arb_rational() -> impl Strategy<Value = Q> {
        (-500i64..500, 1i64..200).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn ultrametric(a in arb_rational(), b in arb_rational(), pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let x = PadicNumber::from_rational(&a, p, 16).unwrap();
            let y = PadicNumber::from_rational(&b, p, 16).unwrap();
            let s = x.add(&y).unwrap();
            let mx = x.norm().max(y.norm());
            prop_assert!(s.norm() <= mx);
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn ring_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let p = 5;
            let e = |r: &Q| PadicNumber::from_rational(r, p, 12).unwrap();
            let (x, y, z) = (e(&a), e(&b), e(&c));
            let l = x.mul(&y.add(&z).unwrap()).unwrap();
            let r = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            prop_assert!(l.eq_to_precision(&r).unwrap());
            let l = x.mul(&y).unwrap().mul(&z).unwrap();
            let r = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert!(l.eq_to_precision(&r).unwrap());
            // embedding is a ring homomorphism
            prop_assert!(e(&(a.clone() * &b + &c)).eq_to_precision(&l.sub(&l).unwrap().add(&x.mul(&y).unwrap().add(&z).unwrap()).unwrap()).unwrap());
        }

        #[test]
        fn exp_log_inverse(k in 1i64..400, pi in 0usize..3) {
            let p = [3u64, 5, 7][pi];
            let x = PadicNumber::from_rational(&q(k * p as i64, 1), p, 16).unwrap();
            let back = x.exp().unwrap().log().unwrap();
            prop_assert!(back.eq_to_precision(&x).unwrap());
            let u = PadicNumber::from_rational(&q(1 + k * p as i64, 1), p, 16).unwrap();
            let again = u.log().unwrap().exp().unwrap();
            prop_assert!(again.eq_to_precision(&u).unwrap());
        }
    }
}
