//! Exact rationals and their canonical `"p/q"` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integral(x: &Rational) -> bool {
    x.is_integer()
}

/// Greatest integer strictly below `x`.
pub fn int_below(x: &Rational) -> Rational {
    let f = x.floor();
    if &f == x {
        f - Rational::one()
    } else {
        f
    }
}

/// Least integer strictly above `x`.
pub fn int_above(x: &Rational) -> Rational {
    let c = x.ceil();
    if &c == x {
        c + Rational::one()
    } else {
        c
    }
}

/// Reduced denominator of `x`.
pub fn denominator(x: &Rational) -> BigInt {
    x.denom().clone()
}

/// Canonical text form: reduced, positive denominator, always with a slash.
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad {what} in fraction: {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad {what} in fraction {s:?}: {e}")))
}

/// Parse `"p/q"` with `q > 0`. Non-reduced input is reduced.
pub fn parse(s: &str) -> Result<Rational> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("fraction {s:?} lacks '/'")))?;
    let p = parse_int(p, "numerator")?;
    if q.starts_with('-') {
        return Err(Error::Parse(format!("fraction {s:?} has negative denominator")));
    }
    let q = parse_int(q, "denominator")?;
    if !q.is_positive() {
        return Err(Error::Parse(format!("fraction {s:?} has zero denominator")));
    }
    let g = p.gcd(&q);
    let g = if g.is_zero() { BigInt::one() } else { g };
    Ok(Rational::new_raw(&p / &g, &q / &g))
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse("-3/1").unwrap(), int(-3));
        assert_eq!(parse("0/7").unwrap(), int(0));
        assert_eq!(format(&frac(-6, 4)), "-3/2");
        assert_eq!(format(&int(0)), "0/1");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1", "1/0", "1/-2", "a/2", "1/2/3", "+1/2", "1 /2", "-/2", "--1/2"] {
            assert!(parse(s).is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn strict_neighbours() {
        assert_eq!(int_below(&int(3)), int(2));
        assert_eq!(int_below(&frac(5, 2)), int(2));
        assert_eq!(int_above(&frac(-1, 3)), int(0));
        assert_eq!(int_above(&int(-1)), int(0));
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = frac(p, q);
            prop_assert_eq!(parse(&format(&x)).unwrap(), x);
        }
    }
}
