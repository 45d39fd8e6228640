//! Exact rational coordinates.
//!
//! Every geometric predicate in this crate is decided over ℚ, so results
//! are exact and independent of magnitude. `Rational` is a re-export of
//! `num::BigRational`; the helpers here cover the few conversions the rest
//! of the crate needs.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics if `q == 0`; callers only pass literal
/// nonzero denominators.
pub fn frac(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` with optional sign. `pos` is a caller-supplied
/// offset used in error positions.
pub fn parse_rational(s: &str, pos: usize) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse {
            pos,
            msg: "empty rational".into(),
        });
    }
    let parse_int = |part: &str| -> Result<BigInt> {
        part.trim().parse::<BigInt>().map_err(|e| Error::Parse {
            pos,
            msg: format!("bad integer {part:?}: {e}"),
        })
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
    }
}

/// The value as an `i64`, when it is an integer of that size.
pub fn rational_to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering with six fractional digits, round-half-up on the
/// absolute value. Used for report columns, never for geometry.
pub fn decimal6(x: &Rational) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    // round(a * 10^6)
    let scaled = (&a * BigRational::from_integer(BigInt::from(1_000_000i64))).round();
    let units = scaled.to_integer();
    let million = BigInt::from(1_000_000i64);
    let whole = &units / &million;
    let fracp = &units % &million;
    format!("{sign}{whole}.{:06}", fracp.to_u64().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "7", "-3", "1/2", "-5/3", "22/7"] {
            let x = parse_rational(s, 0).unwrap();
            assert_eq!(format_rational(&x), s);
        }
        assert_eq!(parse_rational("4/8", 0).unwrap(), frac(1, 2));
        assert!(parse_rational("1/0", 0).is_err());
        assert!(parse_rational("", 3).is_err());
        assert!(parse_rational("x", 0).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal6(&rat(3)), "3.000000");
        assert_eq!(decimal6(&frac(1, 2)), "0.500000");
        assert_eq!(decimal6(&frac(-1, 3)), "-0.333333");
        assert_eq!(decimal6(&frac(2, 3)), "0.666667");
        assert_eq!(decimal6(&frac(1, 1_000_000)), "0.000001");
    }
}
