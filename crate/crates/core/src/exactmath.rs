//! Exact rational arithmetic and the integer combinatorics used by the
//! volume formulas.
//!
//! Everything here is exact. Rationals are `num_rational::BigRational`,
//! always kept in lowest terms with a positive denominator; their wire form
//! is `"p/q"` (or `"p"` when the denominator is one).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("falling factorial exponent must be non-negative, got {0}")]
    NegativeExponent(i64),
    #[error("identity requires a non-negative upper index l, got {0}")]
    NegativeUpperIndex(i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as an exact rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `(-1)^k` for any integer `k`.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Non-negative integer power of a rational.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// `z^[k] = z (z-1) ... (z-k+1)`, with `z^[0] = 1`.
pub fn falling_factorial(z: i64, k: i64) -> Result<BigInt, MathError> {
    if k < 0 {
        return Err(MathError::NegativeExponent(k));
    }
    let mut acc = BigInt::one();
    let z = BigInt::from(z);
    for j in 0..k {
        acc *= &z - j;
    }
    Ok(acc)
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * j)
}

/// Extended binomial coefficient: `z^[k] / k!` for `k >= 0`, zero for `k < 0`.
///
/// The upper argument may be any integer, so `C(-1, 3) = -1` and
/// `C(2, 5) = 0`.
pub fn gen_binomial(z: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // C(z, k) = 0 when 0 <= z < k; skip the product.
    if z >= 0 && z < k {
        return BigInt::zero();
    }
    let num = falling_factorial(z, k).expect("k >= 0");
    let den = factorial(k as u32);
    debug_assert!(num.is_multiple_of(&den));
    num / den
}

/// Left-hand side of the Vandermonde-type identity
/// `sum_j C(l, m+j) C(s, n+j) = C(l+s, l-m+n)` for `l >= 0`.
///
/// Only `0 <= m+j <= l` contributes, so the sum is over `j in [-m, l-m]`.
pub fn vandermonde_sum(l: i64, s: i64, m: i64, n: i64) -> Result<BigInt, MathError> {
    if l < 0 {
        return Err(MathError::NegativeUpperIndex(l));
    }
    Ok((-m..=l - m)
        .map(|j| gen_binomial(l, m + j) * gen_binomial(s, n + j))
        .sum())
}

/// Left-hand side of the alternating identity
/// `sum_j (-1)^j C(s+j, n) C(l, m+j) = (-1)^(l+m) C(s-m, n-l)` for `l >= 0`.
pub fn alternating_sum(l: i64, s: i64, m: i64, n: i64) -> Result<BigInt, MathError> {
    if l < 0 {
        return Err(MathError::NegativeUpperIndex(l));
    }
    Ok((-m..=l - m)
        .map(|j| sign_pow(j) * gen_binomial(s + j, n) * gen_binomial(l, m + j))
        .sum())
}

/// Display adapter producing the `"p/q"` wire form.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    Exact(r).to_string()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.3"` or `"-1.25"`.
/// Decimals are converted exactly (`0.3` becomes `3/10`).
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if !whole.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (whole.is_empty() && frac.is_empty())
        {
            return Err(err("bad decimal"));
        }
        let digits = format!("{whole}{frac}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err("bad decimal"))?
        };
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| err("not a number"))?;
    Ok(Rational::from_integer(p))
}

/// Approximate decimal with 12 significant digits, for human convenience only.
pub fn approx_decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    match r.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => format!("{v:.11e}"),
        _ => {
            // Outside f64 range: scale by a power of ten exactly first.
            let digits = r.abs().numer().to_string().len() as i64
                - r.denom().to_string().len() as i64;
            let shift = num_traits::pow(BigInt::from(10), digits.unsigned_abs() as usize);
            let scaled = if digits >= 0 {
                r / big(shift)
            } else {
                r * big(shift)
            };
            let v = scaled.to_f64().unwrap_or(0.0);
            let normalized = format!("{v:.11e}");
            let (mantissa, exp) = normalized.split_once('e').unwrap_or((&normalized, "0"));
            let exp: i64 = exp.parse().unwrap_or(0);
            format!("{mantissa}e{}", exp + digits)
        }
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let raw = Option::<String>::deserialize(d)?;
            raw.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
