use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{factorize, BigNat};

/// A cyclic factor `Z/p^a` of an abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePowerFactor {
    prime: BigUint,
    exponent: u32,
    modulus: BigUint,
}

impl PrimePowerFactor {
    /// Caller guarantees `prime` is prime and `exponent >= 1`.
    pub(crate) fn new_unchecked(prime: BigUint, exponent: u32) -> Self {
        let modulus = prime.pow(exponent);
        PrimePowerFactor {
            prime,
            exponent,
            modulus,
        }
    }

    pub fn prime(&self) -> &BigUint {
        &self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }
}

/// A finite abelian group in elementary-divisor form, `Z/N_1 + ... + Z/N_l`
/// with every `N_i` a prime power, factors sorted by `(prime, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<PrimePowerFactor>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
        }
    }

    /// Build a group from arbitrary cyclic orders, splitting each into its
    /// prime-power parts.
    pub fn from_divisors(divisors: &[BigUint]) -> Result<Self> {
        let mut factors = Vec::new();
        for d in divisors {
            if d <= &BigUint::one() {
                return Err(Error::invalid(format!(
                    "cyclic order must be at least 2, got {d}"
                )));
            }
            for (p, e) in factorize(d)? {
                factors.push(PrimePowerFactor::new_unchecked(p, e));
            }
        }
        Ok(Self::from_factors(factors))
    }

    pub fn from_u64s(divisors: &[u64]) -> Result<Self> {
        let ds: Vec<BigUint> = divisors.iter().map(|&d| BigUint::from(d)).collect();
        Self::from_divisors(&ds)
    }

    pub(crate) fn from_factors(mut factors: Vec<PrimePowerFactor>) -> Self {
        factors.sort_by(|a, b| (&a.prime, a.exponent).cmp(&(&b.prime, b.exponent)));
        AbelianGroup { factors }
    }

    /// `(Z/p)^n`
    pub fn elementary(prime: u64, n: usize) -> Result<Self> {
        Self::from_u64s(&vec![prime; n])
    }

    pub fn factors(&self) -> &[PrimePowerFactor] {
        &self.factors
    }

    pub fn moduli(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|f| &f.modulus)
    }

    /// Number of cyclic factors, i.e. the length of an element's coordinate tuple.
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.moduli().product()
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn divisors_json(&self) -> GroupSpec {
        GroupSpec {
            divisors: self.moduli().cloned().map(BigNat).collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `{"divisors": [12, 2]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub divisors: Vec<BigNat>,
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<AbelianGroup> {
        let ds: Vec<BigUint> = self.divisors.iter().map(|d| d.0.clone()).collect();
        AbelianGroup::from_divisors(&ds)
    }
}

/// Parse a comma-separated divisor list such as `"12,2"`; the empty string
/// is the trivial group.
pub fn parse_divisor_list(s: &str) -> Result<AbelianGroup> {
    let mut ds = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let d: BigUint = part
            .parse()
            .map_err(|_| Error::invalid(format!("'{part}' is not a positive integer")))?;
        ds.push(d);
    }
    AbelianGroup::from_divisors(&ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moduli(g: &AbelianGroup) -> Vec<u64> {
        g.moduli().map(|m| m.to_u64().unwrap()).collect()
    }

    #[test]
    fn splits_into_prime_powers() {
        let g = AbelianGroup::from_u64s(&[12]).unwrap();
        assert_eq!(moduli(&g), vec![4, 3]);
        let g = AbelianGroup::from_u64s(&[2, 2]).unwrap();
        assert_eq!(moduli(&g), vec![2, 2]);
        let g = AbelianGroup::from_u64s(&[]).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.order(), BigUint::one());
    }

    #[test]
    fn sorted_by_prime_then_exponent() {
        let g = AbelianGroup::from_u64s(&[9, 8, 3, 2, 5]).unwrap();
        assert_eq!(moduli(&g), vec![2, 8, 3, 9, 5]);
        assert_eq!(g.order_u64(), Some(9 * 8 * 3 * 2 * 5));
    }

    #[test]
    fn rejects_small_divisors() {
        assert!(matches!(
            AbelianGroup::from_u64s(&[1]),
            Err(Error::InvalidInput(_))
        ));
        assert!(AbelianGroup::from_u64s(&[0]).is_err());
    }

    #[test]
    fn divisor_list_parsing() {
        assert!(parse_divisor_list("").unwrap().is_trivial());
        assert_eq!(moduli(&parse_divisor_list("2, 6").unwrap()), vec![2, 2, 3]);
        assert!(parse_divisor_list("2,x").is_err());
        assert!(parse_divisor_list("-4").is_err());
    }

    #[test]
    fn group_spec_json() {
        let spec: GroupSpec = serde_json::from_str(r#"{"divisors": [12, 2]}"#).unwrap();
        let g = spec.to_group().unwrap();
        assert_eq!(moduli(&g), vec![2, 4, 3]);
        let back = serde_json::to_string(&g.divisors_json()).unwrap();
        assert_eq!(back, r#"{"divisors":[2,4,3]}"#);
    }
}
