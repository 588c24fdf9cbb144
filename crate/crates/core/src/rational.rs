//! Exact rational scalars.
//!
//! Every coordinate in the crate is a [`Rational`] backed by arbitrary
//! precision integers. Reflections and cuts grow numerators and denominators
//! without bound, so fixed-width arithmetic is never used.

use num::bigint::BigInt;
use num::{BigRational, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// `numer / denom` as an exact rational. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a"` or `"a/b"` (optional leading sign on either part).
///
/// Decimal and exponent notation are rejected: values that cross a file
/// boundary stay exact.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer = parse_integer(numer).ok_or_else(|| ParseRationalError::Invalid(text.into()))?;
    let denom = match denom {
        Some(d) => parse_integer(d).ok_or_else(|| ParseRationalError::Invalid(text.into()))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.into()));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Nearest `f64`; saturates to infinity for out-of-range magnitudes.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_zero() {
            0.0
        } else if value > &Rational::zero() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}
