//! Formal power series in `z` truncated after `z^order`, with coefficients in
//! `Q[t, u]`. All arithmetic is exact modulo `z^(order+1)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Rational, RationalPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RationalPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![RationalPoly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: RationalPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<RationalPoly>) -> Self {
        coeffs.resize(order + 1, RationalPoly::zero());
        TruncatedSeries { coeffs }
    }

    /// `c * z^power`.
    pub fn monomial(order: usize, c: RationalPoly, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &RationalPoly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[RationalPoly] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_order(other);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_order(other);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_order(other);
        let order = self.order();
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `exp(self)`; requires a zero constant term.
    ///
    /// Uses `E' = A' E`, i.e. `n e_n = sum_{j=1..n} j a_j e_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "series exponential needs a zero constant term".into(),
            ));
        }
        let order = self.order();
        let mut e = Self::constant(order, RationalPoly::one());
        for n in 1..=order {
            let mut acc = RationalPoly::zero();
            for j in 1..=n {
                let term = &self.coeffs[j] * &e.coeffs[n - j];
                acc = &acc + &term.scale(&Rational::from_integer(j.into()));
            }
            e.coeffs[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        Ok(e)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::InvalidParameter(
                    "series inverse needs a nonzero rational constant term".into(),
                )
            })?;
        let inv0 = Rational::one() / c0;
        let order = self.order();
        let mut b = Self::constant(order, RationalPoly::constant(inv0.clone()));
        for n in 1..=order {
            let mut acc = RationalPoly::zero();
            for j in 1..=n {
                acc = &acc + &(&self.coeffs[j] * &b.coeffs[n - j]);
            }
            b.coeffs[n] = acc.scale(&-inv0.clone());
        }
        Ok(b)
    }

    /// Lowest order at which the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.same_order(other);
        (0..=self.order()).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}
