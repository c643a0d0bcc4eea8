//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored ascending by degree and kept in canonical form:
//! no trailing zeros, with the zero polynomial represented by an empty
//! coefficient vector. Every operation returns a canonical result.

use crate::rational::Rational;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial::monomial(1, Rational::one())
    }

    /// `c * x^deg`.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial { coeffs }
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation at `x0`.
    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }

    /// The translate `p(x + c)`, expanded exactly.
    pub fn shift(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            // C(i,j) c^{i-j}, both maintained incrementally from j = i down;
            // the integer division C(i,j+1)(j+1)/(i-j) is exact.
            let mut bin = num::BigInt::from(1);
            let mut cpow = Rational::one();
            for j in (0..=i).rev() {
                if j < i {
                    bin = bin * (j + 1) / (i - j);
                    cpow *= c;
                }
                out[j] += ci * &cpow * Rational::from_integer(bin.clone());
            }
        }
        Polynomial::from_coeffs(out)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Unique interpolating polynomial through distinct nodes, via Newton
    /// divided differences. Panics on repeated nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial {
        if points.is_empty() {
            return Polynomial::zero();
        }
        let n = points.len();
        let mut diffs: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        // diffs[j] becomes the divided difference [y_j, ..., y_{j+level}].
        let mut newton = Vec::with_capacity(n);
        newton.push(diffs[0].clone());
        for level in 1..n {
            for j in 0..n - level {
                let dx = &points[j + level].0 - &points[j].0;
                assert!(!dx.is_zero(), "interpolation nodes must be distinct");
                diffs[j] = (&diffs[j + 1] - &diffs[j]) / dx;
            }
            newton.push(diffs[0].clone());
        }
        // Assemble sum_i newton[i] * prod_{j<i} (x - x_j) from the top down.
        let mut acc = Polynomial::constant(newton[n - 1].clone());
        for i in (0..n - 1).rev() {
            let node = Polynomial::from_coeffs(vec![-&points[i].0, Rational::one()]);
            acc = &(&acc * &node) + &Polynomial::constant(newton[i].clone());
        }
        acc
    }

    /// Coefficients rendered in the "p/q" interchange form, ascending.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
