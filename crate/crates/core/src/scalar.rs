//! Exact rational scalars and their text representations.
//!
//! All monetary and value quantities in this crate are `Scalar`s. Comparisons
//! and arithmetic are exact; no floating point enters allocation or payment
//! logic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact arbitrary-precision rational number.
pub type Scalar = BigRational;

/// Builds a scalar from an integer ratio. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a scalar from an integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a decimal literal (`"3"`, `"0.25"`, `"-1.5"`) exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::BadRational(text.to_owned()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::BadRational(text.to_owned()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::BadRational(text.to_owned()))?;
        if d.is_zero() {
            return Err(Error::BadRational(text.to_owned()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadRational(text.to_owned()));
        }
        let negative = whole.starts_with('-');
        let whole_int: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| Error::BadRational(text.to_owned()))?
        };
        let frac_int: BigInt = frac.parse().map_err(|_| Error::BadRational(text.to_owned()))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let magnitude = whole_int.abs() * &scale + frac_int;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| Error::BadRational(text.to_owned()))?;
    Ok(BigRational::from_integer(n))
}

/// Renders a scalar as `"p/q"`, or just `"p"` when it is an integer.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders a truncated decimal expansion with `digits` fractional digits.
pub fn format_decimal(x: &Scalar, digits: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let abs = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs * BigRational::from_integer(scale.clone())).floor();
    let scaled = scaled.to_integer();
    let whole = &scaled / &scale;
    let frac = &scaled % &scale;
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = digits)
    }
}

/// Lossy conversion for statistics; never used in exact logic.
pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ratio_and_decimal_forms() {
        assert_eq!(parse_scalar("200/399").unwrap(), rat(200, 399));
        assert_eq!(parse_scalar("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_scalar("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
        assert_eq!(parse_scalar("-3/6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1.2.3", "1/ /2", "0x10", "1.5e3"] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_scalar(&rat(4, 2)), "2");
        assert_eq!(format_scalar(&rat(200, 399)), "200/399");
        assert_eq!(format_decimal(&rat(599, 200), 4), "2.9950");
        assert_eq!(format_decimal(&rat(-1, 3), 3), "-0.333");
    }

    #[test]
    fn round_trips_through_text() {
        for x in [rat(599, 200), int(0), rat(1, 3), int(42)] {
            assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }
    }
}
