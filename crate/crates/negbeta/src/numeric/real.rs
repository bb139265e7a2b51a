//! Dyadic interval enclosures for a base given as a decimal string.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::interval::Interval;
use super::NumericError;

/// A real number known only through a dyadic enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    interval: Interval,
}

impl CertifiedReal {
    pub fn new(interval: Interval) -> Self {
        Self { interval }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn width(&self) -> BigRational {
        self.interval.width()
    }

    /// Parses a plain decimal such as `-1.3` and encloses it at `bits` of precision.
    ///
    /// Values exactly representable at that precision give a point interval.
    pub fn parse_decimal(text: &str, bits: u32) -> Result<Self, NumericError> {
        let exact = parse_decimal_exact(text)?;
        Ok(Self { interval: Interval::point(exact).round_outward(bits) })
    }
}

/// Exact rational value of a decimal string (optional sign, digits, optional fraction, optional exponent).
pub fn parse_decimal_exact(text: &str) -> Result<BigRational, NumericError> {
    let t = text.trim().replace('\u{2212}', "-");
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e = i32::from_str(&t[i + 1..]).map_err(|_| NumericError::Malformed(t.clone()))?;
            (&t[..i], e)
        }
        None => (t.as_str(), 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(NumericError::Malformed(t.clone()));
    }
    let mut digits = String::from(int_part);
    digits.push_str(frac_part);
    let num = BigInt::from_str(&digits).map_err(|_| NumericError::Malformed(t.clone()))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(num);
    let factor = BigRational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if negative && !value.is_zero() {
        value = -value;
    }
    Ok(value)
}
