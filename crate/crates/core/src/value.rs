//! Value types a Morse function may take.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use thiserror::Error;

/// Exact, totally ordered scalar usable as a Morse function value.
///
/// Any `num_traits::Num` type with a total order qualifies: machine integers,
/// `Ratio<i64>`, `BigRational`. Floating-point types have no `Ord` and are not
/// admitted.
pub trait MorseValue: Num + Clone + Ord + fmt::Debug + fmt::Display + Send + Sync {}

impl<T> MorseValue for T where T: Num + Clone + Ord + fmt::Debug + fmt::Display + Send + Sync {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid value literal `{0}`")]
pub struct ParseValueError(pub String);

/// Parses a decimal literal (`-1`, `2.50`, `+.5`) or a ratio `p/q` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseValueError> {
    let err = || ParseValueError(text.to_string());
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = parse_signed_integer(num).ok_or_else(err)?;
        let den: BigInt = parse_signed_integer(den).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }

    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse::<BigInt>().map_err(|_| err())?
    };
    if negative {
        numer = -numer;
    }
    let mut denom = BigInt::one();
    for _ in 0..frac_part.len() {
        denom *= 10;
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
