//! Exact rational arithmetic helpers shared across the crate.
//!
//! All payoff and bound computations run on [`Rational`] end to end; floating
//! point shows up only in decimal approximations attached to rendered output.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number used for every payoff quantity.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Builds a rational from an unsigned count (round totals, node counts).
pub fn count(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{input}` as a rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

fn parse_err(input: &str, reason: impl Into<String>) -> ParseRationalError {
    ParseRationalError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses `7`, `-7`, `5/2` or an exact decimal such as `2.5` into a rational.
///
/// Decimal inputs are exact: `0.1` becomes `1/10`, never a float.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let text = s.trim();
    if text.is_empty() {
        return Err(parse_err(s, "empty input"));
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "numerator is not an integer"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "denominator is not an integer"))?;
        if den.is_zero() {
            return Err(parse_err(s, "denominator is zero"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(s, "fractional part is not decimal digits"));
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| parse_err(s, "integer part is not an integer"))?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac
            .parse()
            .map_err(|_| parse_err(s, "fractional part is not an integer"))?;
        let magnitude = whole.abs() * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    let num: BigInt = text
        .parse()
        .map_err(|_| parse_err(s, "not an integer, fraction, or decimal"))?;
    Ok(Rational::from_integer(num))
}

/// Renders a rational as `num/den`, or just `num` when the value is integral.
pub fn to_exact_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation of a rational; the exact form stays authoritative.
pub fn to_decimal(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing rationals as exact `num/den` strings.
pub mod serde_ratio {
    use super::{parse_rational, to_exact_string, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        to_exact_string(value).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
