//! Exact rationals. Everything in the crate is computed over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn half() -> Scalar {
    qf(1, 2)
}

/// Canonical wire form: always `p/q`, even for integers.
pub fn to_pq(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Short human form (`3`, `-1/2`).
pub fn to_short(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Accepts `p`, `p/q`, with optional sign and surrounding whitespace.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_ceil(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_pq() {
        for s in [qf(3, 4), qf(-6, 8), q(0), q(7)] {
            assert_eq!(parse_scalar(&to_pq(&s)).unwrap(), s);
        }
        assert_eq!(to_pq(&qf(-6, 8)), "-3/4");
        assert_eq!(to_pq(&q(2)), "2/1");
        assert_eq!(to_short(&q(2)), "2");
    }

    #[test]
    fn canonical_form() {
        let s = qf(4, -6);
        assert_eq!(s.numer(), &BigInt::from(-2));
        assert_eq!(s.denom(), &BigInt::from(3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
