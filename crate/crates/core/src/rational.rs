//! Exact rational weights: parsing and display helpers.
//!
//! Weights are arbitrary-precision rationals. Text forms accepted are
//! integers (`-3`), fractions (`5/2`), and finite decimals (`0.25`), the
//! latter converted exactly. Scientific notation is rejected so that no
//! weight ever passes through floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses an integer, `p/q` fraction, or finite decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    if s.contains(['e', 'E']) {
        return Err(Error::Parse(format!(
            "scientific notation is not accepted for weights: {s:?}"
        )));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den <= BigInt::zero() {
            return Err(Error::Parse(format!(
                "denominator must be a positive integer in {s:?}"
            )));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (sign, whole) = match whole.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if whole.is_empty() || frac.is_empty() {
            return Err(Error::Parse(format!("malformed decimal {s:?}")));
        }
        if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("malformed decimal {s:?}")));
        }
        let whole: BigInt = whole.parse().unwrap();
        let frac_digits = frac.len() as u32;
        let frac: BigInt = frac.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac_digits);
        let num = (whole * &scale + frac) * BigInt::from(sign);
        return Ok(Rational::new(num, scale));
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad weight {s:?}")))?;
    Ok(Rational::from_integer(num))
}

/// Formats a rational as `p` when integral, else `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Formats a float with ten significant digits.
pub fn format_float(value: f64) -> String {
    format!("{value:.9e}")
}

pub fn is_unit(value: &Rational) -> bool {
    value.numer().abs().is_one() && value.denom().is_one()
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_decimals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("5/2").unwrap(), rational(5, 2));
        assert_eq!(parse_rational("-4/6").unwrap(), rational(-2, 3));
        assert_eq!(parse_rational("0.5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("2.50").unwrap(), rational(5, 2));
    }

    #[test]
    fn rejects_scientific_notation_and_junk() {
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("2.5E-1").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational(".5").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("one").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for text in ["1", "-3", "1/2", "-7/3"] {
            let v = parse_rational(text).unwrap();
            assert_eq!(format_rational(&v), text);
        }
        assert_eq!(format_rational(&parse_rational("0.5").unwrap()), "1/2");
    }
}
