//! Closed constructors for the named polynomial families.
//!
//! Every family here is an Appell sequence: its generating function is an
//! invertible kernel series `A(t)` times `e^{xt}`, so the degree-`n` member
//! is `sum_j C(n,j) a_{n-j} x^j` with `a_m = m! [t^m] A(t)`. The kernels:
//!
//! - higher-order Bernoulli: `(t/(e^t - 1))^r`
//! - poly-Bernoulli of index `k`: `Li_k(1 - e^{-t}) / (1 - e^{-t})`,
//!   assembled directly as `sum_{j>=0} (1 - e^{-t})^j / (j+1)^k` so that no
//!   division of delta series is ever needed
//! - Hermite of order `nu`: `e^{-nu t^2 / 2}`
//! - Frobenius-Euler of order `r`: `((1 - lambda)/(e^t - lambda))^r`
//! - the mixed family `HB_n^{(nu,k)}`: the product of the Hermite and
//!   poly-Bernoulli kernels
//!
//! Construction is by coefficient extraction from the kernel; the umbral
//! engine's conjugate representation is an independent cross-check, exercised
//! by the tests rather than used here.
//!
//! Truncation policy: an operation that needs the degree-`n` member builds
//! its series at order `n + 1`, leaving one spare order for consumers that
//! differentiate. Callers never pick series orders for family operations.
//!
//! Parameter naming: `nu` is the (variance-like) order of the Hermite family,
//! `r` the order of the higher-order Bernoulli and Frobenius-Euler families.
//! Both are conventionally called "order" but are unrelated.

use crate::combinatorics::{binomial_u, factorial};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{int_pow, Rational};
use crate::series::TruncatedSeries;
use crate::umbral::ShefferPair;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Parameter bundle for the family constructors and the identity suite.
///
/// Invariants: `nu != 0` and `lambda != 1`. Identities that do not involve a
/// given parameter simply ignore it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyParams {
    pub nu: Rational,
    pub k: i32,
    pub r: u32,
    pub lambda: Rational,
}

impl FamilyParams {
    pub fn new(nu: Rational, k: i32, r: u32, lambda: Rational) -> Result<Self> {
        if nu.is_zero() {
            return Err(Error::ZeroNu);
        }
        if lambda.is_one() {
            return Err(Error::LambdaIsOne);
        }
        Ok(FamilyParams { nu, k, r, lambda })
    }
}

/// Dispatch key for the CLI-facing family surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyId {
    Stirling2,
    BernoulliNumber,
    BernoulliOrderR,
    PolyBernoulli,
    Hermite,
    FrobeniusEuler,
    HbMixed,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Stirling2,
        FamilyId::BernoulliNumber,
        FamilyId::BernoulliOrderR,
        FamilyId::PolyBernoulli,
        FamilyId::Hermite,
        FamilyId::FrobeniusEuler,
        FamilyId::HbMixed,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::Stirling2 => "stirling2",
            FamilyId::BernoulliNumber => "bernoulli_number",
            FamilyId::BernoulliOrderR => "bernoulli_order_r",
            FamilyId::PolyBernoulli => "poly_bernoulli",
            FamilyId::Hermite => "hermite",
            FamilyId::FrobeniusEuler => "frobenius_euler",
            FamilyId::HbMixed => "hb",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stirling2" => Ok(FamilyId::Stirling2),
            "bernoulli_number" => Ok(FamilyId::BernoulliNumber),
            "bernoulli_order_r" => Ok(FamilyId::BernoulliOrderR),
            "poly_bernoulli" => Ok(FamilyId::PolyBernoulli),
            "hermite" => Ok(FamilyId::Hermite),
            "frobenius_euler" => Ok(FamilyId::FrobeniusEuler),
            "hb" | "hb_mixed" => Ok(FamilyId::HbMixed),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

// ---------------------------------------------------------------------------
// Stirling numbers of the second kind
// ---------------------------------------------------------------------------

/// `S_2(n, m)` by the triangle recurrence
/// `S_2(n, m) = m S_2(n-1, m) + S_2(n-1, m-1)`. Out-of-range arguments
/// (negative, or `m > n`) give 0.
pub fn stirling2(n: i64, m: i64) -> Rational {
    if n < 0 || m < 0 || m > n {
        return Rational::zero();
    }
    let (n, m) = (n as usize, m as usize);
    let table = stirling2_table(n);
    Rational::from_integer(table[n][m].clone())
}

/// Rows `0..=n_max` of the `S_2` triangle, as big integers.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<num::BigInt>> {
    let mut rows: Vec<Vec<num::BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![num::BigInt::from(1)]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = vec![num::BigInt::from(0); n + 1];
        for m in 1..=n {
            let carry = if m < n {
                prev[m].clone() * m
            } else {
                num::BigInt::from(0)
            };
            row[m] = carry + &prev[m - 1];
        }
        rows.push(row);
    }
    rows
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

/// `(t/(e^t - 1))^r`.
pub fn bernoulli_kernel(r: u32, trunc: usize) -> TruncatedSeries {
    let expm1_over_t = TruncatedSeries::from_fn(trunc, |i| {
        Rational::one() / Rational::from_integer(factorial(i + 1))
    });
    expm1_over_t
        .invert()
        .expect("(e^t - 1)/t has constant term 1")
        .pow(r)
}

/// `Li_k(1 - e^{-t}) / (1 - e^{-t}) = sum_{j>=0} (1 - e^{-t})^j / (j+1)^k`.
///
/// Because `(1 - e^{-t})^j` has order `j`, the sum is finite at any
/// truncation order.
pub fn polylog_kernel(k: i32, trunc: usize) -> TruncatedSeries {
    let u = TruncatedSeries::one_minus_exp_neg(trunc);
    let mut acc = TruncatedSeries::one(trunc);
    let mut upow = TruncatedSeries::one(trunc);
    for j in 1..=trunc {
        upow = &upow * &u;
        acc = &acc + &upow.scale(&int_pow(j as i64 + 1, -k));
    }
    acc
}

/// `Li_k(1 - e^{-t}) = sum_{m>=1} (1 - e^{-t})^m / m^k`, truncated.
///
/// Defined for every integer `k`; for `k <= 0` the division by `m^k` is a
/// multiplication by `m^{|k|}`.
pub fn polylog_series(k: i32, trunc: usize) -> TruncatedSeries {
    let u = TruncatedSeries::one_minus_exp_neg(trunc);
    let mut acc = TruncatedSeries::zero(trunc);
    let mut upow = TruncatedSeries::one(trunc);
    for m in 1..=trunc {
        upow = &upow * &u;
        acc = &acc + &upow.scale(&int_pow(m as i64, -k));
    }
    acc
}

/// `e^{-nu t^2 / 2}`.
pub fn hermite_kernel(nu: &Rational, trunc: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); trunc + 1];
    let half_neg_nu = -nu / Rational::from_integer(2.into());
    let mut term = Rational::one();
    coeffs[0] = Rational::one();
    let mut m = 1usize;
    while 2 * m <= trunc {
        term = term * &half_neg_nu / Rational::from_integer(m.into());
        coeffs[2 * m] = term.clone();
        m += 1;
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `((1 - lambda)/(e^t - lambda))^r`.
pub fn frobenius_kernel(r: u32, lambda: &Rational, trunc: usize) -> Result<TruncatedSeries> {
    if lambda.is_one() {
        return Err(Error::LambdaIsOne);
    }
    let mut et_minus_lambda = TruncatedSeries::exp_t(&Rational::one(), trunc);
    et_minus_lambda = &et_minus_lambda - &TruncatedSeries::constant(lambda.clone(), trunc);
    let base = TruncatedSeries::constant(Rational::one() - lambda, trunc).div(&et_minus_lambda)?;
    Ok(base.pow(r))
}

/// The mixed kernel `e^{-nu t^2/2} Li_k(1 - e^{-t})/(1 - e^{-t})`.
pub fn hb_kernel(nu: &Rational, k: i32, trunc: usize) -> Result<TruncatedSeries> {
    if nu.is_zero() {
        return Err(Error::ZeroNu);
    }
    Ok(&hermite_kernel(nu, trunc) * &polylog_kernel(k, trunc))
}

// ---------------------------------------------------------------------------
// Appell assembly
// ---------------------------------------------------------------------------

/// Degree-`n` member of the Appell sequence with kernel `A`:
/// `p_n(x) = sum_j C(n,j) a_{n-j} x^j`, `a_m = m! [t^m] A`.
pub fn appell_polynomial(kernel: &TruncatedSeries, n: usize) -> Result<Polynomial> {
    if kernel.truncation_order() < n {
        return Err(Error::InsufficientTruncation {
            order: kernel.truncation_order(),
            degree: n,
        });
    }
    let numbers = appell_numbers(kernel, n);
    Ok(assemble_appell(&numbers, n))
}

/// Members `0..=n_max` of the Appell sequence with kernel `A`.
pub fn appell_table(kernel: &TruncatedSeries, n_max: usize) -> Result<Vec<Polynomial>> {
    if kernel.truncation_order() < n_max {
        return Err(Error::InsufficientTruncation {
            order: kernel.truncation_order(),
            degree: n_max,
        });
    }
    let numbers = appell_numbers(kernel, n_max);
    Ok((0..=n_max).map(|n| assemble_appell(&numbers, n)).collect())
}

fn appell_numbers(kernel: &TruncatedSeries, n_max: usize) -> Vec<Rational> {
    (0..=n_max)
        .map(|m| kernel.coeff(m) * Rational::from_integer(factorial(m)))
        .collect()
}

fn assemble_appell(numbers: &[Rational], n: usize) -> Polynomial {
    let coeffs = (0..=n)
        .map(|j| binomial_u(n, j) * &numbers[n - j])
        .collect();
    Polynomial::from_coeffs(coeffs)
}

// ---------------------------------------------------------------------------
// Family constructors
// ---------------------------------------------------------------------------

/// Ordinary Bernoulli number `B_n`.
pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_kernel(1, n).coeff(n) * Rational::from_integer(factorial(n))
}

/// `B_0..B_{n_max}`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let kernel = bernoulli_kernel(1, n_max);
    (0..=n_max)
        .map(|m| kernel.coeff(m) * Rational::from_integer(factorial(m)))
        .collect()
}

/// Bernoulli polynomial of order `r`.
pub fn bernoulli_poly(n: usize, r: u32) -> Polynomial {
    appell_polynomial(&bernoulli_kernel(r, n + 1), n).expect("kernel built at n + 1")
}

pub fn bernoulli_poly_table(n_max: usize, r: u32) -> Vec<Polynomial> {
    appell_table(&bernoulli_kernel(r, n_max + 1), n_max).expect("kernel built at n_max + 1")
}

/// Poly-Bernoulli polynomial `B_n^{(k)}(x)`.
pub fn poly_bernoulli(n: usize, k: i32) -> Polynomial {
    appell_polynomial(&polylog_kernel(k, n + 1), n).expect("kernel built at n + 1")
}

pub fn poly_bernoulli_table(n_max: usize, k: i32) -> Vec<Polynomial> {
    appell_table(&polylog_kernel(k, n_max + 1), n_max).expect("kernel built at n_max + 1")
}

/// Hermite polynomial of order `nu`.
pub fn hermite(n: usize, nu: &Rational) -> Result<Polynomial> {
    if nu.is_zero() {
        return Err(Error::ZeroNu);
    }
    appell_polynomial(&hermite_kernel(nu, n + 1), n)
}

pub fn hermite_table(n_max: usize, nu: &Rational) -> Result<Vec<Polynomial>> {
    if nu.is_zero() {
        return Err(Error::ZeroNu);
    }
    appell_table(&hermite_kernel(nu, n_max + 1), n_max)
}

/// Frobenius-Euler polynomial `H_n^{(r)}(x | lambda)`.
pub fn frobenius_euler(n: usize, r: u32, lambda: &Rational) -> Result<Polynomial> {
    appell_polynomial(&frobenius_kernel(r, lambda, n + 1)?, n)
}

pub fn frobenius_euler_table(n_max: usize, r: u32, lambda: &Rational) -> Result<Vec<Polynomial>> {
    appell_table(&frobenius_kernel(r, lambda, n_max + 1)?, n_max)
}

/// Mixed Hermite x poly-Bernoulli polynomial `HB_n^{(nu,k)}(x)`.
pub fn hb(n: usize, nu: &Rational, k: i32) -> Result<Polynomial> {
    appell_polynomial(&hb_kernel(nu, k, n + 1)?, n)
}

pub fn hb_table(n_max: usize, nu: &Rational, k: i32) -> Result<Vec<Polynomial>> {
    appell_table(&hb_kernel(nu, k, n_max + 1)?, n_max)
}

// ---------------------------------------------------------------------------
// The families as Sheffer pairs (all Appell: f = t)
// ---------------------------------------------------------------------------

/// `(1, t)`: the monomials.
pub fn monomial_pair(trunc: usize) -> ShefferPair {
    ShefferPair::appell(TruncatedSeries::one(trunc)).expect("1 is invertible")
}

/// `(e^{nu t^2/2}, t)` for the Hermite family.
pub fn hermite_pair(nu: &Rational, trunc: usize) -> Result<ShefferPair> {
    if nu.is_zero() {
        return Err(Error::ZeroNu);
    }
    // e^{nu t^2 / 2} is the Hermite kernel with the sign of nu flipped.
    ShefferPair::appell(hermite_kernel(&-nu, trunc))
}

/// `((1 - e^{-t})/Li_k(1 - e^{-t}), t)` for the poly-Bernoulli family.
pub fn poly_bernoulli_pair(k: i32, trunc: usize) -> ShefferPair {
    let g = polylog_kernel(k, trunc)
        .invert()
        .expect("polylog kernel has constant term 1");
    ShefferPair::appell(g).expect("g is invertible")
}

/// `(e^{nu t^2/2} (1 - e^{-t})/Li_k(1 - e^{-t}), t)` for the mixed family.
pub fn hb_pair(nu: &Rational, k: i32, trunc: usize) -> Result<ShefferPair> {
    let g = hb_kernel(nu, k, trunc)?
        .invert()
        .expect("mixed kernel has constant term 1");
    ShefferPair::appell(g)
}

/// `(((e^t - 1)/t)^r, t)` for the higher-order Bernoulli family.
pub fn bernoulli_order_pair(r: u32, trunc: usize) -> ShefferPair {
    let expm1_over_t = TruncatedSeries::from_fn(trunc, |i| {
        Rational::one() / Rational::from_integer(factorial(i + 1))
    });
    ShefferPair::appell(expm1_over_t.pow(r)).expect("g is invertible")
}

/// `(((e^t - lambda)/(1 - lambda))^r, t)` for the Frobenius-Euler family.
pub fn frobenius_euler_pair(r: u32, lambda: &Rational, trunc: usize) -> Result<ShefferPair> {
    if lambda.is_one() {
        return Err(Error::LambdaIsOne);
    }
    let et_minus_lambda = &TruncatedSeries::exp_t(&Rational::one(), trunc)
        - &TruncatedSeries::constant(lambda.clone(), trunc);
    let base = et_minus_lambda.scale(&(Rational::one() / (Rational::one() - lambda)));
    ShefferPair::appell(base.pow(r))
}
