use std::str::FromStr;

use num::{BigInt, BigRational};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator. `Display` renders `a/b`, or `a` when the denominator is 1,
/// which is also the interchange form used in every file format.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse(format!("`{s}`: zero denominator")));
        }
        Ok(Rational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub(crate) fn ser_rationals<S: serde::Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(|q| q.to_string()))
}
