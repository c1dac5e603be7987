use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{self, Matrix};
use super::{AbelianGroup, Element, PrimePowerFactor};
use crate::error::{Error, Result};
use crate::numbers::{big_string, to_bigint, BigNat};

/// A subgroup of an abelian group, held as the canonical Hermite basis of
/// its preimage lattice in `Z^l`. Two subgroups of the same ambient group
/// are equal as sets exactly when their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: AbelianGroup,
    basis: Matrix,
    order: BigUint,
}

fn moduli_of(group: &AbelianGroup) -> Vec<BigInt> {
    group.moduli().map(to_bigint).collect()
}

fn coords_of(e: &Element) -> Vec<BigInt> {
    e.coords().iter().map(to_bigint).collect()
}

impl Subgroup {
    pub(crate) fn from_lattice_generators<I>(ambient: &AbelianGroup, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let moduli = moduli_of(ambient);
        let basis = lattice::hermite_basis(&moduli, gens);
        let index: BigInt = basis
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .product();
        let order = (to_bigint(&ambient.order()) / index)
            .to_biguint()
            .expect("subgroup order is positive");
        Subgroup {
            ambient: ambient.clone(),
            basis,
            order,
        }
    }

    pub fn trivial(ambient: &AbelianGroup) -> Self {
        Self::from_lattice_generators(ambient, std::iter::empty())
    }

    pub fn full(ambient: &AbelianGroup) -> Self {
        let l = ambient.num_factors();
        Self::from_lattice_generators(
            ambient,
            (0..l).map(|i| {
                let mut v = vec![BigInt::zero(); l];
                v[i] = BigInt::one();
                v
            }),
        )
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Upper-triangular canonical basis; row `i` has pivot `d_i | N_i` in column `i`.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn pivot(&self, i: usize) -> &BigInt {
        &self.basis[i][i]
    }

    /// Basis rows reduced into the ambient group, zero rows dropped.
    pub fn generators(&self) -> Vec<Element> {
        self.basis
            .iter()
            .filter_map(|row| {
                let e = Element::from_ints(&self.ambient, row).expect("row length matches");
                (!e.is_zero()).then_some(e)
            })
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, r)| r[i].is_one())
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Element) -> Result<bool> {
        if !self.ambient.contains(g) {
            return Err(Error::invalid(format!(
                "{g} is not an element of {}",
                self.ambient
            )));
        }
        Ok(lattice::lattice_contains(&self.basis, &coords_of(g)))
    }

    fn check_same_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::invalid(format!(
                "subgroups live in different groups ({} vs {})",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn equals(&self, other: &Subgroup) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self
            .basis
            .iter()
            .all(|row| lattice::lattice_contains(&other.basis, row)))
    }

    /// The subgroup `{t : sum_i t_i s_i / N_i in Z for every s in self}`,
    /// computed in the ambient group's elementary-divisor coordinates.
    pub fn orthogonal(&self) -> Subgroup {
        let moduli = moduli_of(&self.ambient);
        let cols = lattice::dual_columns(&moduli, &self.basis);
        Subgroup::from_lattice_generators(&self.ambient, cols)
    }

    /// Isomorphism type of the subgroup, in elementary-divisor form.
    pub fn structure(&self) -> AbelianGroup {
        // H = L / diag(N) Z^l and diag(N) = U * B, so H = Z^l / rowspan(U).
        let moduli = moduli_of(&self.ambient);
        let u = lattice::dual_columns(&moduli, &self.basis);
        self.group_from_invariants(lattice::smith_diagonal(u))
    }

    /// Isomorphism type of `ambient / self`.
    pub fn quotient_structure(&self) -> AbelianGroup {
        self.group_from_invariants(lattice::smith_diagonal(self.basis.clone()))
    }

    fn group_from_invariants(&self, invariants: Vec<BigInt>) -> AbelianGroup {
        let primes = self.ambient.primes();
        let mut factors = Vec::new();
        for d in invariants {
            let mut d = d.to_biguint().expect("invariant factors are non-negative");
            debug_assert!(!d.is_zero());
            for p in &primes {
                let mut e = 0u32;
                loop {
                    let (q, r) = d.div_rem(p);
                    if !r.is_zero() {
                        break;
                    }
                    d = q;
                    e += 1;
                }
                if e > 0 {
                    factors.push(PrimePowerFactor::new_unchecked(p.clone(), e));
                }
            }
            debug_assert!(d.is_one(), "invariant factor must divide the group order");
        }
        AbelianGroup::from_factors(factors)
    }

    pub fn rank(&self) -> u32 {
        self.structure().rank()
    }

    /// Composition length, the number of prime factors of the order.
    pub fn len(&self) -> u64 {
        let mut n = self.order.clone();
        let mut total = 0;
        for p in self.ambient.primes() {
            loop {
                let (q, r) = n.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                n = q;
                total += 1;
            }
        }
        total
    }

    /// Element of the subgroup with triangular coordinates `c_i in [0, N_i / d_i)`.
    /// This map is a bijection from the coordinate box onto the subgroup.
    pub(crate) fn element_from_box(&self, box_coords: &[BigUint]) -> Element {
        let l = self.basis.len();
        let mut acc = vec![BigInt::zero(); l];
        for (i, c) in box_coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = to_bigint(c);
            for j in i..l {
                acc[j] += &c * &self.basis[i][j];
            }
        }
        Element::from_ints(&self.ambient, &acc).expect("row length matches")
    }

    /// Side lengths `N_i / d_i` of the coordinate box.
    pub(crate) fn box_sides(&self) -> Vec<BigUint> {
        self.ambient
            .moduli()
            .enumerate()
            .map(|(i, m)| m / self.pivot(i).magnitude())
            .collect()
    }

    pub fn to_json(&self) -> SubgroupJson {
        SubgroupJson {
            generators: self
                .generators()
                .iter()
                .map(|g| g.coords().iter().cloned().map(BigNat).collect())
                .collect(),
            order: self.order.clone(),
            basis: self
                .basis
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| BigNat(x.to_biguint().expect("canonical basis is non-negative")))
                        .collect()
                })
                .collect(),
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}> (order {})", gens.join(", "), self.order)
    }
}

impl AbelianGroup {
    /// The subgroup generated by `gens`; the empty list gives the trivial subgroup.
    pub fn span(&self, gens: &[Element]) -> Result<Subgroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::invalid(format!("{g} is not an element of {self}")));
            }
        }
        Ok(Subgroup::from_lattice_generators(
            self,
            gens.iter().map(coords_of),
        ))
    }
}

/// `{"generators": [[1, 0], ...], "order": "8", "basis": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub generators: Vec<Vec<BigNat>>,
    #[serde(with = "big_string")]
    pub order: BigUint,
    pub basis: Vec<Vec<BigNat>>,
}
