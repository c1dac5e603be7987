use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::AbelianGroup;
use crate::error::{Error, Result};
use crate::numbers::BigNat;

/// An element of an [`AbelianGroup`]: one reduced coordinate per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<BigUint>,
}

impl Element {
    pub fn zero(group: &AbelianGroup) -> Self {
        Element {
            coords: vec![BigUint::zero(); group.num_factors()],
        }
    }

    /// Reduces each coordinate into `[0, N_i)`.
    pub fn new(group: &AbelianGroup, coords: Vec<BigUint>) -> Result<Self> {
        check_len(group, coords.len())?;
        let coords = coords
            .into_iter()
            .zip(group.moduli())
            .map(|(c, m)| c % m)
            .collect();
        Ok(Element { coords })
    }

    /// Accepts arbitrary signed integers and reduces them.
    pub fn from_ints(group: &AbelianGroup, coords: &[BigInt]) -> Result<Self> {
        check_len(group, coords.len())?;
        let coords = coords
            .iter()
            .zip(group.moduli())
            .map(|(c, m)| {
                c.mod_floor(&BigInt::from(m.clone()))
                    .to_biguint()
                    .expect("mod_floor is non-negative")
            })
            .collect();
        Ok(Element { coords })
    }

    pub fn from_i64s(group: &AbelianGroup, coords: &[i64]) -> Result<Self> {
        let ints: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_ints(group, &ints)
    }

    pub(crate) fn from_reduced(coords: Vec<BigUint>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            coords: self.coords.iter().cloned().map(BigNat).collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_len(group: &AbelianGroup, len: usize) -> Result<()> {
    if len != group.num_factors() {
        return Err(Error::invalid(format!(
            "element has {len} coordinates but the group has {} factors",
            group.num_factors()
        )));
    }
    Ok(())
}

fn check_member(group: &AbelianGroup, a: &Element) -> Result<()> {
    check_len(group, a.coords.len())?;
    if a.coords.iter().zip(group.moduli()).any(|(c, m)| c >= m) {
        return Err(Error::invalid(format!("{a} is not reduced in {group}")));
    }
    Ok(())
}

impl AbelianGroup {
    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        check_member(self, a)?;
        check_member(self, b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(self.moduli())
            .map(|((x, y), m)| {
                let s = x + y;
                if &s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        Ok(Element { coords })
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        check_member(self, a)?;
        let coords = a
            .coords
            .iter()
            .zip(self.moduli())
            .map(|(x, m)| if x.is_zero() { BigUint::zero() } else { m - x })
            .collect();
        Ok(Element { coords })
    }

    /// `m * a` for any integer `m`, including negative ones.
    pub fn scale(&self, a: &Element, m: &BigInt) -> Result<Element> {
        check_member(self, a)?;
        let coords: Vec<BigInt> = a
            .coords
            .iter()
            .map(|x| BigInt::from(x.clone()) * m)
            .collect();
        Element::from_ints(self, &coords)
    }

    pub fn contains(&self, a: &Element) -> bool {
        check_member(self, a).is_ok()
    }
}

/// `{"coords": [3, 0, 1]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coords: Vec<BigNat>,
}

impl ElementJson {
    pub fn to_element(&self, group: &AbelianGroup) -> Result<Element> {
        Element::new(group, self.coords.iter().map(|c| c.0.clone()).collect())
    }
}
