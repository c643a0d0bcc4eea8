//! The scalar field: arbitrary-precision rationals in canonical form.
//!
//! `Rational` is `num`'s `Ratio<BigInt>`, which maintains exactly the
//! canonical form this crate relies on: the denominator is always positive,
//! numerator and denominator are coprime, and zero is `0/1`. Its `Display`
//! form is the interchange contract used everywhere ("p/q", or "p" when the
//! denominator is 1, with the sign on p).

use num::bigint::BigInt;
use num::BigRational;
use num::Zero;
use thiserror::Error;

pub type Rational = BigRational;

/// Rational from an integer pair. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` as a rational, for any sign of `exp`. Panics if `base == 0`
/// and `exp < 0`.
pub fn int_pow(base: i64, exp: i32) -> Rational {
    rat_int(base).pow(exp)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part {0:?} (decimals are rejected; use p/q)")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Parse the "p/q" text form. Integer literals ("7", "-3") are accepted;
/// decimals are not. The result is reduced to canonical form, so "2/-4"
/// parses to `-1/2`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| {
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(part.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_maintained() {
        let r = rat(2, -4);
        assert_eq!(r, rat(-1, 2));
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(rat(0, 5).to_string(), "0");
        assert_eq!(rat(6, 3).to_string(), "2");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["0", "7", "-3", "1/2", "-22/7", "1000000000000000000000/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical input parses to the canonical form.
        assert_eq!(parse_rational("2/-4").unwrap().to_string(), "-1/2");
        assert_eq!(parse_rational(" 3/9 ").unwrap().to_string(), "1/3");
    }

    #[test]
    fn parse_rejects_bad_literals() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn int_pow_handles_negative_exponents() {
        assert_eq!(int_pow(2, 3), rat_int(8));
        assert_eq!(int_pow(2, -3), rat(1, 8));
        assert_eq!(int_pow(3, 0), rat_int(1));
        assert_eq!(int_pow(-2, -2), rat(1, 4));
    }
}
