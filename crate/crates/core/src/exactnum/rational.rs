//! Big rationals, their text form and float conversions.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form, always `p/q`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q`, `p`, and plain decimals such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && whole_digits.is_empty() {
            return Err(bad());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || !whole_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let digits = if digits.is_empty() { "0".to_string() } else { digits };
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Natural log of a positive big integer, accurate to f64 precision for any size.
pub fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.sign() == Sign::Plus);
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(q: &Rational) -> f64 {
    assert!(q.is_positive(), "log of non-positive rational");
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

pub fn to_f64(q: &Rational) -> f64 {
    match q.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // huge or tiny magnitudes
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            if q.is_zero() {
                0.0
            } else {
                sign * ln_rational(&q.abs()).exp()
            }
        }
    }
}

/// Exact rational value of a finite f64.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Rounds `q` to a dyadic rational with `bits` fractional bits.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub mod serde_rational {
    //! Serde adapter writing rationals as `"p/q"` strings.
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rational(&s).map_err(de::Error::custom),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(de::Error::custom),
            other => Err(de::Error::custom(format!("expected rational, got {other}"))),
        }
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let w: Vec<String> = v.iter().map(format_rational).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let w: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(w.into_iter().map(|x| x.0).collect())
    }
}

pub mod serde_bigint {
    //! Integers as JSON numbers when they fit in i64, decimal strings otherwise.
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                n.to_string().parse().map_err(de::Error::custom)
            }
            serde_json::Value::String(s) => s.trim().parse().map_err(de::Error::custom),
            other => Err(de::Error::custom(format!("expected integer, got {other}"))),
        }
    }
}
