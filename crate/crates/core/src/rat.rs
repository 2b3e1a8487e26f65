//! Exact rational scalars.
//!
//! Every numeric value in this crate is a [`Rat`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating point anywhere.

use num::bigint::BigInt;
use num::{BigRational, Zero};
use thiserror::Error;

/// The scalar type used throughout the crate.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d` in lowest terms. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the canonical string form `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| RatParseError::Malformed(s.to_owned()))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| RatParseError::Malformed(s.to_owned()))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rat::new(n, d))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}
