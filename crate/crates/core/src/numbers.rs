//! Exact-arithmetic helpers shared by every module: primality and
//! factorization of unbounded integers, ceiling base-2 logarithms of
//! rationals, and the JSON encodings used for big numbers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    num_prime::nt_funcs::is_prime(n, None).probably()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    if n.is_one() {
        return Ok(Vec::new());
    }
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if let Some(rest) = rest {
        if !rest.is_empty() {
            return Err(Error::limit(format!("failed to factor {n}")));
        }
    }
    Ok(found.into_iter().map(|(p, e)| (p, e as u32)).collect())
}

/// Smallest integer `n` with `2^n >= x`, for a positive rational `x`.
///
/// Computed by exact comparison against powers of two; no floating point.
pub fn ceil_log2(x: &BigRational) -> Result<i64> {
    if !x.is_positive() {
        return Err(Error::invalid("logarithm of a non-positive rational"));
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // 2^(b_n - b_d - 1) < x < 2^(b_n - b_d + 1), so the answer is one of two values.
    let guess = num.bits() as i64 - den.bits() as i64;
    let fits = |n: i64| -> bool {
        // 2^n * den >= num
        if n >= 0 {
            (den << n as usize) >= *num
        } else {
            *den >= (num << (-n) as usize)
        }
    };
    if fits(guess) {
        Ok(if fits(guess - 1) { guess - 1 } else { guess })
    } else {
        Ok(guess + 1)
    }
}

/// Exact rational from a string of the form `a/b` or `a`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(Error::invalid(format!(
            "'{s}' is not an exact rational; write it as a fraction such as 1/10"
        )));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::invalid(format!("bad numerator in '{s}'")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::invalid(format!("bad denominator in '{s}'")))?;
    if d.is_zero() {
        return Err(Error::invalid(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

pub fn check_epsilon(epsilon: &BigRational) -> Result<()> {
    if epsilon.is_positive() && epsilon < &BigRational::one() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )))
    }
}

pub fn to_bigint(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

/// Non-negative residue of `a` modulo a positive `m`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// `{"num": "21", "den": "32"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<RationalJson> for BigRational {
    type Error = Error;

    fn try_from(r: RationalJson) -> Result<Self> {
        parse_rational(&format!("{}/{}", r.num, r.den))
    }
}

pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let raw = RationalJson::deserialize(d)?;
        BigRational::try_from(raw).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[BigRational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(RationalJson::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<RationalJson>::deserialize(d)?;
        raw.into_iter()
            .map(|r| BigRational::try_from(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A non-negative integer written either as a JSON number or a decimal string.
/// Values that fit in a `u64` are emitted as numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigNat(pub BigUint);

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(BigNat(BigUint::from(v))),
            Raw::Str(s) => s.trim().parse().map(BigNat).map_err(|_| {
                serde::de::Error::custom(format!("'{s}' is not a non-negative integer"))
            }),
        }
    }
}

pub mod big_string {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        BigNat::deserialize(d).map(|n| n.0)
    }
}
