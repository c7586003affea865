//! Exact rational scalars.
//!
//! Everything in this crate computes over `Q` with arbitrary-precision
//! rationals. `Rational` values are always stored reduced with a positive
//! denominator, so `==` is exact structural equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, kept reduced with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for a big integer.
pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("denominator is zero in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` with optional sign, exactly. No floats.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        t.parse::<BigInt>()
            .map_err(|_| ParseRationalError::InvalidInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let n = parse_int(num.trim())?;
            let d = parse_int(den.trim())?;
            if d == BigInt::from(0) {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats reduced: `"p"` when the denominator is 1, otherwise `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-7", "2/3", "-2/3", "10/4"] {
            let r = parse_rational(s).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back);
        }
        // normalization: reduced, positive denominator
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
        assert_eq!(format_rational(&parse_rational("1/-2").unwrap()), "-1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator("1/0".to_string()))
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("a/b").is_err());
    }
}
