//! Exact rational helpers.
//!
//! Everything in this crate is computed over [`Rational`], an
//! arbitrary-precision fraction. Text output uses `p/q`, or `n` when the
//! value is integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `num/den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Least integer `>= x`.
pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Greatest integer `<= x`.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Least integer strictly greater than `x`.
pub fn least_integer_above(x: &Rational) -> BigInt {
    floor(x) + BigInt::one()
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

/// Canonical text form: `n` or `p/q` (denominator positive, lowest terms).
pub fn fmt(x: &Rational) -> String {
    x.to_string()
}

/// Parses `n`, `-n`, `p/q` or `-p/q`.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Sum of a slice of rationals.
pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

/// Least non-negative residue of `a` modulo `m` (`m > 0`).
pub fn residue(a: i64, m: i64) -> i64 {
    a.mod_floor(&m)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

/// Serde adapter that writes a [`Rational`] as its canonical text form.
pub mod serde_text {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(fmt(&q(-143, 144)), "-143/144");
        assert_eq!(fmt(&q(10, 5)), "2");
        assert_eq!(fmt(&q(3, -6)), "-1/2");
        assert_eq!(parse(" -35/72 ").unwrap(), q(-35, 72));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn strict_ceiling() {
        assert_eq!(least_integer_above(&int(16)), BigInt::from(17));
        assert_eq!(least_integer_above(&q(33, 2)), BigInt::from(17));
        assert_eq!(least_integer_above(&q(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&q(15, 8)), BigInt::from(2));
    }
}
