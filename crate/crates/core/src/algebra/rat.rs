//! Arbitrary-precision rationals.
//!
//! `Rat` is a plain alias for [`BigRational`]; the helpers here cover the
//! handful of conversions the rest of the crate needs, plus a serde adapter
//! that writes rationals as `"num/den"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for any integer `e`. Panics on `0^e` with `e < 0`; callers check.
pub fn pow(q: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), e.unsigned_abs() as usize)
    }
}

/// Canonical `"num/den"` form; integers print without a denominator.
pub fn to_string(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Rat::new(n, d)
        }
        None => Rat::from_integer(s.parse().map_err(|_| format!("bad rational `{s}`"))?),
    };
    Ok(parsed)
}

/// Exact conversion to `i64` when the value is an integer in range.
pub fn to_i64(q: &Rat) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

pub mod serde_str {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("6/8").unwrap(), frac(3, 4));
        assert_eq!(to_string(&frac(3, 4)), "3/4");
        assert_eq!(to_string(&frac(-4, 2)), "-2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&int(3), -2), frac(1, 9));
        assert_eq!(pow(&frac(2, 3), 3), frac(8, 27));
        assert_eq!(pow(&int(7), 0), int(1));
    }
}
