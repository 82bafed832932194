//! Exact rational coefficients and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational in canonical reduced form.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division when the parts overflow f64
        let scale = x.denom().bits().max(x.numer().bits()).saturating_sub(52);
        let n = (x.numer() >> scale).to_f64().unwrap_or(f64::MAX);
        let d = (x.denom() >> scale).to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Formats as `n` or `n/d`, the form used in all JSON documents.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n` or `n/d` with optional sign. Position info refers to `s`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_s.parse().map_err(|_| err("invalid numerator"))?;
    let denom: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| err("invalid denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

/// Snaps a positive float to a nearby rational with the given denominator,
/// keeping the result strictly positive.
pub fn rat_snap(x: f64, denom: u64) -> Rat {
    debug_assert!(x > 0.0 && x.is_finite());
    let d = BigInt::from(denom);
    let n = BigInt::from((x * denom as f64).round().max(1.0) as i64);
    Rat::new(n, d)
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}

/// Serde adapter: rationals as `"n/d"` strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        rat_from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rat], ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(xs.iter().map(|x| rat_to_string(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        let ss = Vec::<String>::deserialize(de)?;
        ss.iter()
            .map(|s| rat_from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
