//! Exact rationals and their `"a/b"` string encoding.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational used for actions, indices and monotonicity constants.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a rational literal (expected `a` or `a/b`)")]
pub struct ParseRationalError(pub String);

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(t).map_err(|_| err())?,
        )),
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `"a/b"` (or `"a"` for integers) rendering.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("floor exceeds i64 range")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("ceil exceeds i64 range")
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// `true` when `2r` is an integer.
pub fn is_half_integer(r: &Rational) -> bool {
    (r * int(2)).is_integer()
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapter storing a [`Rational`] as its `"a/b"` string.
pub mod serde_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        match raw {
            RawRational::Text(s) => parse_rational(&s).map_err(D::Error::custom),
            RawRational::Int(i) => Ok(super::int(i)),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RawRational {
        Text(String),
        Int(i64),
    }

    pub mod vec {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        pub(super) struct Wrap(#[serde(with = "super")] pub(super) Rational);

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<String> = v.iter().map(|r| r.to_string()).collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let w: Vec<Wrap> = Vec::deserialize(d)?;
            Ok(w.into_iter().map(|Wrap(r)| r).collect())
        }
    }

    pub mod opt_vec {
        use super::super::Rational;
        use super::vec::Wrap;
        use serde::{Deserialize, Deserializer};

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            let w: Option<Vec<Wrap>> = Option::deserialize(d)?;
            Ok(w.map(|w| w.into_iter().map(|Wrap(r)| r).collect()))
        }
    }
}
