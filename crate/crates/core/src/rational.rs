//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Values coming from the command line or from `f64` are converted without
//! rounding: decimal literals are read digit by digit and every finite `f64`
//! is a dyadic rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{DiniError, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite binary64 value.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(DiniError::Parse {
        what: "finite real",
        input: x.to_string(),
    })
}

/// Nearest binary64 value.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `7`, `-3/2`, `0.5`, `.25`, `1e-3` or `-2.5E+2` exactly.
pub fn parse(input: &str) -> Result<Rational> {
    let err = || DiniError::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| err())?;
        let den: BigInt = d.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(all * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(all, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// `a/b` or `a` when the denominator is one.
pub fn display(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// JSON-facing wrapper: `{"num": "45", "den": "1286", "value": 0.0349...}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue(pub Rational);

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 3)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.serialize_field("value", &to_f64(&self.0))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms_exactly() {
        assert_eq!(parse("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse("-1").unwrap(), int(-1));
        assert_eq!(parse("1.5").unwrap(), ratio(3, 2));
        assert_eq!(parse(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse("-2.5E+2").unwrap(), int(-250));
        assert_eq!(parse("-7/8").unwrap(), ratio(-7, 8));
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "e5", "0x10"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn f64_conversion_is_exact() {
        let q = from_f64(0.1).unwrap();
        assert_ne!(q, ratio(1, 10));
        assert_eq!(to_f64(&q), 0.1);
        assert!(from_f64(f64::NAN).is_err());
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let q = Rational::new(BigInt::from(90), BigInt::from(-2572));
        assert_eq!(display(&q), "-45/1286");
        assert_eq!(display(&int(3)), "3");
    }
}
