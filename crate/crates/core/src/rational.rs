//! Exact scalar arithmetic.
//!
//! Every coefficient in the engine is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! floating point anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parses `"p"` or `"p/q"` with decimal integers, `q > 0` after
/// normalization.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let trimmed = text.trim();
    match trimmed.split_once('/') {
        None => {
            let num: BigInt = trimmed
                .parse()
                .map_err(|_| Error::InvalidRational(text.to_owned()))?;
            Ok(Rational::from_integer(num))
        }
        Some((num, den)) => {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRational(text.to_owned()))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRational(text.to_owned()))?;
            if den.is_zero() {
                return Err(Error::InvalidRational(text.to_owned()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    Rational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// True when the value is a non-negative integer.
pub fn is_nonnegative_integer(value: &Rational) -> bool {
    value.denom().is_one() && !value.is_negative()
}
