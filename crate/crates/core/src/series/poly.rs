//! Finitely supported polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{parse_rational, Q};
use crate::error::{Error, Result};

/// Degree → coefficient, with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolynomialExact {
    coeffs: BTreeMap<usize, Q>,
}

impl PolynomialExact {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Q, n: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(n, c);
        }
        PolynomialExact { coeffs }
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Q::one(), 1)
    }

    /// From `[c0, c1, ...]`.
    pub fn from_coeffs(cs: impl IntoIterator<Item = Q>) -> Self {
        let coeffs = cs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        PolynomialExact { coeffs }
    }

    /// Parses a comma separated coefficient list `c0,c1,...`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let cs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(cs))
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(&n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dense coefficient vector up to the degree.
    pub fn to_vec(&self) -> Vec<Q> {
        match self.degree() {
            None => vec![],
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    fn insert_add(map: &mut BTreeMap<usize, Q>, k: usize, c: Q) {
        let e = map.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            map.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            Self::insert_add(&mut coeffs, *k, c.clone());
        }
        PolynomialExact { coeffs }
    }

    pub fn neg(&self) -> Self {
        PolynomialExact { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                Self::insert_add(&mut coeffs, i + j, a * b);
            }
        }
        PolynomialExact { coeffs }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolynomialExact { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// `z^k * self`.
    pub fn shift(&self, k: usize) -> Self {
        PolynomialExact { coeffs: self.coeffs.iter().map(|(d, v)| (d + k, v.clone())).collect() }
    }

    pub fn eval(&self, x: &Q) -> Q {
        let Some(d) = self.degree() else { return Q::zero() };
        let mut acc = Q::zero();
        for k in (0..=d).rev() {
            acc = acc * x + self.coeff(k);
        }
        acc
    }

    /// `z ↦ f(c z)`.
    pub fn dilate(&self, c: &Q) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut last = 0usize;
        let mut pw = Q::one();
        for (k, v) in &self.coeffs {
            pw *= num_traits::pow(c.clone(), k - last);
            last = *k;
            Self::insert_add(&mut coeffs, *k, v * &pw);
        }
        PolynomialExact { coeffs }
    }

    /// Euclidean division; `Err` on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or_else(|| Error::DivisionByZero("polynomial division by zero".into()))?;
        let lead = d.coeff(dd);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd) / &lead;
            let t = Self::monomial(c, rd - dd);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Ok((quot, rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let l = a.coeff(d).recip();
                a.scale(&l)
            }
        }
    }
}

impl fmt::Display for PolynomialExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
