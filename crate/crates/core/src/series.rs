//! Truncated formal power series in `t` over the rationals.
//!
//! A series stores exactly `N + 1` coefficients, where `N` is its truncation
//! order; coefficients beyond `N` are unknown, not zero. Binary operations
//! truncate to the minimum order of their inputs, silently: callers that need
//! a particular accuracy construct their inputs at matching orders.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Coefficient of `t^i` at index `i`; length is exactly `trunc + 1`.
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The identity delta series `t` (truncated away entirely when `trunc = 0`).
    pub fn t(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if trunc >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// Build from explicit coefficients; the length fixes the truncation
    /// order, so the empty vector is promoted to the zero series at order 0.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(trunc: usize, f: impl Fn(usize) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: (0..=trunc).map(f).collect(),
        }
    }

    /// `e^{c t}`.
    pub fn exp_t(c: &Rational, trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(trunc + 1);
        let mut term = Rational::one();
        coeffs.push(term.clone());
        for i in 1..=trunc {
            term = term * c / Rational::from_integer(i.into());
            coeffs.push(term.clone());
        }
        TruncatedSeries { coeffs }
    }

    /// `e^t - 1`.
    pub fn expm1(trunc: usize) -> Self {
        let mut s = Self::exp_t(&Rational::one(), trunc);
        s.coeffs[0] = Rational::zero();
        s
    }

    /// `1 - e^{-t}`.
    pub fn one_minus_exp_neg(trunc: usize) -> Self {
        let e = Self::exp_t(&-Rational::one(), trunc);
        &Self::one(trunc) - &e
    }

    /// `1/(1 - t)`.
    pub fn geometric(trunc: usize) -> Self {
        Self::from_fn(trunc, |_| Rational::one())
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; panics for `i` beyond the truncation order,
    /// where the coefficient is unknown.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs[i].clone()
    }

    /// Smallest stored index with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// Nonzero constant term.
    pub fn is_invertible(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Zero constant term, nonzero `t`-coefficient.
    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.len() > 1 && !self.coeffs[1].is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `t^j`: coefficients shift up, the top `j` fall off
    /// the truncation, and the order is unchanged.
    pub fn shift_up(&self, j: usize) -> Self {
        let n = self.truncation_order();
        Self::from_fn(n, |i| {
            if i >= j {
                self.coeffs[i - j].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Truncate (or zero-extend never happens: requires `trunc <= self.trunc`).
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.truncation_order());
        TruncatedSeries {
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    /// `d/dt`, which loses one order of truncation. The order-0 edge case
    /// returns the zero series at order 0.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Quotient `self / rhs` by forward substitution; `rhs` must be
    /// invertible.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if !rhs.is_invertible() {
            return Err(Error::DivisionByNonInvertible);
        }
        let n = self.truncation_order().min(rhs.truncation_order());
        let b0 = &rhs.coeffs[0];
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for k in 1..=i {
                if !rhs.coeffs[k].is_zero() {
                    acc -= &rhs.coeffs[k] * &out[i - k];
                }
            }
            out.push(acc / b0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse `1 / self`.
    pub fn invert(&self) -> Result<Self> {
        Self::one(self.truncation_order()).div(self)
    }

    /// `self^e` by repeated squaring, at this series' truncation order.
    pub fn pow(&self, e: u32) -> Self {
        let n = self.truncation_order();
        let mut result = Self::one(n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Composition `self(inner)`; `inner` must have zero constant term so
    /// that each `inner^k` contributes only from order `k` upward.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonDeltaInner);
        }
        let n = self.truncation_order().min(inner.truncation_order());
        let inner = inner.truncate(n);
        // Horner from the top coefficient down.
        let mut acc = TruncatedSeries::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &(&acc * &inner) + &TruncatedSeries::constant(self.coeffs[k].clone(), n);
        }
        Ok(acc)
    }

    /// `e^{self}` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        Self::exp_t(&Rational::one(), self.truncation_order()).compose(self)
    }

    /// Compositional inverse: the unique delta series `g` with
    /// `self(g(t)) = t` up to the truncation order.
    ///
    /// Solved degree by degree: with `b_1 = 1/a_1` fixed, adjusting `b_n`
    /// changes the `t^n` coefficient of the back-composition by `a_1 b_n`
    /// and nothing below it.
    pub fn revert(&self) -> Result<Self> {
        if self.order() != Some(1) {
            return Err(Error::NotDeltaSeries);
        }
        let n = self.truncation_order();
        let a1 = &self.coeffs[1];
        let mut fbar = Self::zero(n);
        fbar.coeffs[1] = Rational::one() / a1;
        for m in 2..=n {
            let back = self.compose(&fbar)?;
            let err = back.coeff(m);
            if !err.is_zero() {
                fbar.coeffs[m] = -err / a1;
            }
        }
        Ok(fbar)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.truncation_order().min(rhs.truncation_order());
        TruncatedSeries::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.truncation_order().min(rhs.truncation_order());
        TruncatedSeries::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.truncation_order().min(rhs.truncation_order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
