//! Scalars shared by the deformation machinery: exact rationals and p-adics.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::padic::PadicNumber;
use super::rational::Q;
use crate::error::{Error, Result};

/// Field operations with a context value supplying prime/precision for p-adics.
///
/// Binary operations assume both operands live in the same field; mixing
/// primes is a programming error and panics.
pub trait Scalar: Clone + Debug + Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Q) -> Result<Self>;
    fn is_zero_value(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn over(&self, o: &Self) -> Result<Self>;
    /// Strict sign where meaningful; `None` for p-adics.
    fn is_positive(&self) -> Option<bool>;
    /// Equality (exact for rationals, to precision for p-adics).
    fn same_as(&self, o: &Self) -> bool;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&Q::from_integer(n.into())).expect("integers embed")
    }

    /// Product of `items`, starting from one.
    fn product_of(&self, items: &[Self]) -> Self {
        items.iter().fold(self.one_like(), |acc, x| acc.times(x))
    }

    /// `h_0, ..., h_{n_max}` with `h_n = sum_{k<n} a^(n-1-k) b^k`.
    fn geometric_sums(a: &Self, b: &Self, n_max: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut s = a.zero_like();
        let mut bp = a.one_like();
        out.push(s.clone());
        for _ in 0..n_max {
            s = a.times(&s).plus(&bp);
            bp = bp.times(b);
            out.push(s.clone());
        }
        out
    }

    fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.one_like().over(self)? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl Scalar for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn from_rational_like(&self, r: &Q) -> Result<Self> {
        Ok(r.clone())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn over(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            Err(Error::DivisionByZero(format!("{self} / 0")))
        } else {
            Ok(self / o)
        }
    }
    fn is_positive(&self) -> Option<bool> {
        Some(Signed::is_positive(self))
    }
    fn same_as(&self, o: &Self) -> bool {
        self == o
    }
    fn product_of(&self, items: &[Self]) -> Self {
        // one gcd at the end instead of one per factor
        let (mut n, mut d) = (BigInt::one(), BigInt::one());
        for x in items {
            n *= x.numer();
            d *= x.denom();
        }
        Q::new(n, d)
    }
    fn geometric_sums(a: &Self, b: &Self, n_max: usize) -> Vec<Self> {
        // h_n (a_d b_d)^(n-1) = t_n with t_(n+1) = a_n b_d t_n + (b_n a_d)^n
        let (u, v) = (a.numer() * b.denom(), b.numer() * a.denom());
        let den = a.denom() * b.denom();
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(Q::zero());
        let (mut t, mut vp, mut dp) = (BigInt::zero(), BigInt::one(), BigInt::one());
        for n in 0..n_max {
            t = &u * &t + &vp;
            vp *= &v;
            if n > 0 {
                dp *= &den;
            }
            out.push(Q::new(t.clone(), dp.clone()));
        }
        out
    }
}

impl Scalar for PadicNumber {
    fn zero_like(&self) -> Self {
        PadicNumber::zero(self.prime(), self.precision())
    }
    fn one_like(&self) -> Self {
        PadicNumber::one(self.prime(), self.precision())
    }
    fn from_rational_like(&self, r: &Q) -> Result<Self> {
        PadicNumber::from_rational(r, self.prime(), self.precision())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o).expect("p-adic operands share a prime")
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o).expect("p-adic operands share a prime")
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o).expect("p-adic operands share a prime")
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn over(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn is_positive(&self) -> Option<bool> {
        None
    }
    fn same_as(&self, o: &Self) -> bool {
        self.eq_to_precision(o).unwrap_or(false)
    }
    fn powi(&self, n: i64) -> Result<Self> {
        self.pow_int(n)
    }
}
