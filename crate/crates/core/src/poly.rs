//! Sparse polynomials in `t` and `u` over exact coefficient rings.
//!
//! Terms are kept in a `BTreeMap` keyed by `(deg_t, deg_u)`, so iteration and
//! printing are in lexicographic exponent order. Zero coefficients are never
//! stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent pair `(deg_t, deg_u)`.
pub type Monomial = (u32, u32);

/// Ring operations the polynomial code needs from its coefficients.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + FromStr + PartialEq + Zero + One + Signed + Send + Sync
{
}

impl<C> Coefficient for C where
    C: Clone + fmt::Debug + fmt::Display + FromStr + PartialEq + Zero + One + Signed + Send + Sync
{
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2<C> {
    terms: BTreeMap<Monomial, C>,
}

/// Integer polynomial in `t`, `u`; the counting polynomials live here.
pub type BivariatePolynomial = Poly2<BigInt>;

/// Polynomial in `t`, `u` with rational coefficients; series coefficients.
pub type RationalPoly = Poly2<Rational>;

impl<C: Coefficient> Poly2<C> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, deg_t: u32, deg_u: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, deg_t, deg_u);
        p
    }

    pub fn t() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn u() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn add_term(&mut self, c: C, deg_t: u32, deg_u: u32) {
        if c.is_zero() {
            return;
        }
        let key = (deg_t, deg_u);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_t: u32, deg_u: u32) -> C {
        self.terms
            .get(&(deg_t, deg_u))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &C)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    /// The constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(v.clone() * c.clone(), a, b);
        }
        out
    }

    /// Multiplies by `t^shift`.
    pub fn shift_t(&self, shift: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + shift, b), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `u = 1`.
    pub fn at_u_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, _), c) in &self.terms {
            out.add_term(c.clone(), a, 0);
        }
        out
    }

    /// Value at `t = u = 1`.
    pub fn at_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Coefficients of `t^0 .. t^deg` after substituting `u = 1`.
    pub fn t_coefficients(&self) -> Vec<C> {
        let flat = self.at_u_one();
        let deg = flat.degree_t().unwrap_or(0);
        (0..=deg).map(|d| flat.coeff(d, 0)).collect()
    }

    /// Whether `[t^h] p(t, 1) = [t^{center - h}] p(t, 1)` for all `h`, i.e.
    /// `p(t,1) = t^center p(1/t, 1)`.
    pub fn is_palindromic_in_t(&self, center: u32) -> bool {
        let flat = self.at_u_one();
        if flat.degree_t().is_some_and(|d| d > center) {
            return false;
        }
        (0..=center).all(|h| flat.coeff(h, 0) == flat.coeff(center - h, 0))
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly2<D> {
        let mut out = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(f(c), a, b);
        }
        out
    }
}

impl BivariatePolynomial {
    pub fn to_rational(&self) -> RationalPoly {
        self.map_coefficients(|c| Rational::from_integer(c.clone()))
    }

    /// Builds a polynomial from a dense histogram indexed by `(deg_t, deg_u)`.
    pub fn from_histogram(h: &Histogram) -> Self {
        let mut p = Self::zero();
        for a in 0..h.rows {
            for b in 0..h.cols {
                let c = h.counts[a * h.cols + b];
                if c != 0 {
                    p.add_term(BigInt::from(c), a as u32, b as u32);
                }
            }
        }
        p
    }
}

impl<C: Coefficient> Add for &Poly2<C> {
    type Output = Poly2<C>;
    fn add(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(c.clone(), a, b);
        }
        out
    }
}

impl<C: Coefficient> Sub for &Poly2<C> {
    type Output = Poly2<C>;
    fn sub(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(-c.clone(), a, b);
        }
        out
    }
}

impl<C: Coefficient> Neg for &Poly2<C> {
    type Output = Poly2<C>;
    fn neg(self) -> Poly2<C> {
        self.map_coefficients(|c| -c.clone())
    }
}

impl<C: Coefficient> Mul for &Poly2<C> {
    type Output = Poly2<C>;
    fn mul(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(c1.clone() * c2.clone(), a1 + a2, b1 + b2);
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl<C: Coefficient> $tr for Poly2<C> {
            type Output = Poly2<C>;
            fn $method(self, rhs: Poly2<C>) -> Poly2<C> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add add, Sub sub, Mul mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, deg_t: u32, deg_u: u32) -> fmt::Result {
    let mut parts = Vec::new();
    for (var, d) in [("t", deg_t), ("u", deg_u)] {
        match d {
            0 => {}
            1 => parts.push(var.to_string()),
            d => parts.push(format!("{var}^{d}")),
        }
    }
    f.write_str(&parts.join("*"))
}

/// `1 + 4*t + t^2`, `t + u^2`, `3/2*t*u - 1`; the zero polynomial prints as `0`.
impl<C: Coefficient> fmt::Display for Poly2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if a == 0 && b == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write_monomial(f, a, b)?;
            } else {
                write!(f, "{magnitude}*")?;
                write_monomial(f, a, b)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for Poly2<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly2::zero();
        let mut term_start = 0;
        let bytes = compact.as_bytes();
        let mut bounds = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                bounds.push((term_start, i));
                term_start = i;
            }
        }
        for (a, b) in bounds {
            let mut term = &compact[a..b];
            let mut sign = C::one();
            if let Some(rest) = term.strip_prefix('+') {
                term = rest;
            } else if let Some(rest) = term.strip_prefix('-') {
                term = rest;
                sign = -sign;
            }
            let mut coeff = C::one();
            let (mut dt, mut du) = (0u32, 0u32);
            for factor in term.split('*') {
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                match var {
                    "t" => dt += exp,
                    "u" => du += exp,
                    num => {
                        let c = num
                            .parse::<C>()
                            .map_err(|_| Error::Parse(format!("bad coefficient {num:?}")))?;
                        coeff = coeff * c;
                    }
                }
            }
            out.add_term(sign * coeff, dt, du);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    t: u32,
    u: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

/// `{"terms":[{"t":1,"u":0,"c":"4"}, ...]}` with decimal-string coefficients.
impl<C: Coefficient> Serialize for Poly2<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(t, u), c)| JsonTerm {
                    t,
                    u,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly2<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(deserializer)?;
        let mut out = Poly2::zero();
        for term in raw.terms {
            let c = term
                .c
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            out.add_term(c, term.t, term.u);
        }
        Ok(out)
    }
}

/// Dense `(deg_t, deg_u)` counter used as the per-worker accumulator in
/// enumeration kernels. Merging is elementwise addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn new(rows: usize, cols: usize) -> Self {
        Histogram {
            rows,
            cols,
            counts: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn record(&mut self, deg_t: usize, deg_u: usize) {
        self.counts[deg_t * self.cols + deg_u] += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        let t = BivariatePolynomial::t();
        let one = BivariatePolynomial::one();
        let a3 = &(&one + &t.scale(&BigInt::from(4))) + &(&t * &t);
        assert_eq!(a3.to_string(), "1 + 4*t + t^2");
        let n2 = &t + &(&BivariatePolynomial::u() * &BivariatePolynomial::u());
        assert_eq!(n2.to_string(), "u^2 + t");
        assert_eq!(BivariatePolynomial::zero().to_string(), "0");
        assert_eq!(p("1 + 4*t + t^2"), a3);
        assert_eq!(p("-3*t*u^2 + 2 - t").to_string(), "2 - t - 3*t*u^2");
        let r: RationalPoly = "3/2*t - 1/3".parse().unwrap();
        assert_eq!(r.to_string(), "-1/3 + 3/2*t");
    }

    #[test]
    fn arithmetic() {
        let a = p("1 + t");
        let b = p("t + u^2");
        assert_eq!((&a * &b).to_string(), "u^2 + t + t*u^2 + t^2");
        assert!((&a - &a).is_zero());
        assert_eq!(p("t + u^2").shift_t(2), p("t^3 + t^2*u^2"));
        assert_eq!(p("t*u + 2*u^3 + 3").at_u_one(), p("t + 5"));
        assert_eq!(p("1 + 4*t + t^2").at_one(), BigInt::from(6));
        assert!(p("1 + 4*t + t^2").is_palindromic_in_t(2));
        assert!(!p("1 + 3*t").is_palindromic_in_t(1));
    }

    #[test]
    fn json_form() {
        let a = p("1 + 4*t + t^2");
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"t":0,"u":0,"c":"1"},{"t":1,"u":0,"c":"4"},{"t":2,"u":0,"c":"1"}]}"#
        );
        let back: BivariatePolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let big = p("123456789012345678901234567890*u");
        let back: BivariatePolynomial =
            serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn histogram_conversion() {
        let mut h = Histogram::new(3, 3);
        h.record(1, 0);
        h.record(0, 2);
        h.record(0, 2);
        assert_eq!(BivariatePolynomial::from_histogram(&h), p("2*u^2 + t"));
        assert_eq!(h.total(), 3);
    }
}
