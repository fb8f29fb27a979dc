//! Helpers over `BigRational`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// `n/d` as a rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `a`, `a/b` or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || !ip.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Always `num/den`, also for integers.
pub fn format_num_den(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) && p <= u32::MAX as u64 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{p} is not a supported prime")))
    }
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidParameter("an odd prime is required".into()));
    }
    Ok(())
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (d, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = d;
        v += 1;
    }
}

pub fn uint_valuation(n: &BigUint, p: u64) -> u32 {
    let pb = BigUint::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while !m.is_zero() {
        let (d, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = d;
        v += 1;
    }
    v
}

/// `v_p(x)`; `None` stands for the infinite valuation of zero.
pub fn padic_valuation(x: &Q, p: u64) -> Result<Option<i64>> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(None);
    }
    Ok(Some(int_valuation(x.numer(), p) - int_valuation(x.denom(), p)))
}

/// `|x|_p` of a rational.
pub fn rational_padic_norm(x: &Q, p: u64) -> Result<Q> {
    Ok(match padic_valuation(x, p)? {
        None => Q::zero(),
        Some(v) => pow_int(&qi(p as i64), -v)?,
    })
}

pub fn pow_int(x: &Q, n: i64) -> Result<Q> {
    if n >= 0 {
        Ok(num_traits::pow(x.clone(), n as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero("zero to a negative power".into()))
    } else {
        Ok(num_traits::pow(x.recip(), n.unsigned_abs() as usize))
    }
}

/// Exact `k`-th root when `x` is a perfect power.
pub fn exact_root(x: &Q, k: u32) -> Option<Q> {
    if k == 0 {
        return None;
    }
    if k == 1 || x.is_zero() {
        return Some(x.clone());
    }
    if x.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *n {
            Some(r)
        } else {
            None
        }
    };
    Some(Q::new(root(x.numer())?, root(x.denom())?))
}

/// `x^e` for rational `e`, succeeding only when the result is rational.
pub fn pow_rational(x: &Q, e: &Q) -> Result<Q> {
    let k = e
        .denom()
        .to_u32()
        .ok_or_else(|| Error::NotExact(format!("exponent denominator too large in {e}")))?;
    let n = e
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("exponent too large: {e}")))?;
    if x.is_zero() {
        return if e.is_positive() {
            Ok(Q::zero())
        } else {
            Err(Error::DivisionByZero(format!("0^{e}")))
        };
    }
    if k % 2 == 0 && x.is_negative() {
        return Err(Error::NotExact(format!("({x})^({e}) is not real-rational")));
    }
    let r = exact_root(x, k).ok_or_else(|| Error::NotExact(format!("({x})^(1/{k}) is irrational")))?;
    pow_int(&r, n)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `C(n, 2)` as used in twist exponents.
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// `10^(-k)`.
pub fn ten_pow_neg(k: u32) -> Q {
    Q::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

/// `|x|` as a rational.
pub fn qabs(x: &Q) -> Q {
    x.abs()
}

pub fn sign_of(x: &Q) -> Sign {
    x.numer().sign()
}
