//! Binomial coefficients, falling factorials, and factorials.
//!
//! The unsigned variants are the internal workhorses; the `i64` variants
//! validate their arguments and are the checked public surface (`C(n,k)` and
//! `(n)_k` are both 0 when `k > n`, and `(n)_0 = 1`).

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::bigint::BigInt;
use num::One;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `C(n, k)` as a big integer; 0 when `k > n`.
pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    // Multiplicative form; each intermediate quotient is exact.
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Pascal triangle rows `0..=n_max`.
pub fn pascal_triangle(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigInt::one());
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// Falling factorial `n (n-1) ... (n-k+1)` as a big integer; 0 when `k > n`.
pub fn falling_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

/// `C(n, k)` as a rational.
pub fn binomial_u(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial_big(n, k))
}

/// `(n)_k` as a rational.
pub fn falling_u(n: usize, k: usize) -> Rational {
    Rational::from_integer(falling_big(n, k))
}

/// Checked binomial coefficient over signed arguments.
pub fn binomial(n: i64, k: i64) -> Result<Rational> {
    if n < 0 || k < 0 {
        return Err(Error::NegativeArgument);
    }
    Ok(binomial_u(n as usize, k as usize))
}

/// Checked falling factorial over signed arguments.
pub fn falling_factorial(n: i64, k: i64) -> Result<Rational> {
    if n < 0 || k < 0 {
        return Err(Error::NegativeArgument);
    }
    Ok(falling_u(n as usize, k as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), rat_int(10));
        assert_eq!(binomial(5, 0).unwrap(), rat_int(1));
        assert_eq!(binomial(3, 5).unwrap(), rat_int(0));
        assert_eq!(binomial(-1, 2), Err(Error::NegativeArgument));
        assert_eq!(binomial(2, -1), Err(Error::NegativeArgument));
    }

    #[test]
    fn falling_values() {
        assert_eq!(falling_factorial(6, 3).unwrap(), rat_int(120)); // 6*5*4
        assert_eq!(falling_factorial(3, 5).unwrap(), rat_int(0));
        assert_eq!(falling_factorial(7, 0).unwrap(), rat_int(1));
        assert_eq!(falling_factorial(-2, 0), Err(Error::NegativeArgument));
    }

    #[test]
    fn falling_matches_binomial_times_factorial() {
        for n in 0..=10usize {
            for k in 0..=n {
                assert_eq!(falling_big(n, k), binomial_big(n, k) * factorial(k));
            }
        }
    }

    #[test]
    fn pascal_triangle_matches_binomial() {
        let rows = pascal_triangle(12);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(v, &binomial_big(n, k));
            }
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(12), BigInt::from(479001600u64));
    }
}
