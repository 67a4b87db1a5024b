//! Exact rational scalars and their serialization as "p/q" strings.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::Error;

/// All weights, cut values and matrix entries are `BigRational`s: always
/// reduced, positive denominator, exact arithmetic.
pub type Rat = BigRational;

pub fn rat(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// 2^e for possibly negative e.
pub fn pow2(e: i64) -> Rat {
    let two = rat(2);
    if e >= 0 {
        num::pow::pow(two, e as usize)
    } else {
        num::pow::pow(two, (-e) as usize).recip()
    }
}

/// Parses "p/q" or a plain integer string.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let numer = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(numer, denom))
        }
        None => {
            let numer = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(Rat::from_integer(numer))
        }
    }
}

/// Renders as "p/q", or just "p" for integers.
pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

/// Rough size measure used for pivot selection: total bit length of
/// numerator and denominator.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Serde adapters writing rationals as "p/q" strings.
pub mod rat_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_str(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_str))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
