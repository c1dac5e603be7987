//! Explicit enumeration of small groups. Everything here works on element
//! indices and set closure, independently of the lattice machinery, and
//! serves as the oracle for it.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{AbelianGroup, Element};
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// Lexicographic iterator over all elements of a group.
#[derive(Debug, Clone)]
pub struct Elements {
    moduli: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut carried = true;
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.moduli[i] {
                carried = false;
                break;
            }
            succ[i] = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(Element::from_reduced(
            cur.into_iter().map(BigUint::from).collect(),
        ))
    }
}

fn check_cap(group: &AbelianGroup, cap: u64) -> Result<u64> {
    match group.order_u64() {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::limit(format!(
            "group of order {} exceeds the enumeration cap {cap}",
            group.order()
        ))),
    }
}

impl AbelianGroup {
    pub fn elements(&self, cap: u64) -> Result<Elements> {
        check_cap(self, cap)?;
        Ok(Elements {
            moduli: self
                .moduli()
                .map(|m| m.to_u64().expect("checked"))
                .collect(),
            next: Some(vec![0; self.num_factors()]),
        })
    }
}

/// A small group with elements numbered `0..order` in lexicographic order.
#[derive(Debug, Clone)]
pub struct IndexedGroup {
    moduli: Vec<u64>,
    coords: Vec<Vec<u64>>,
    strides: Vec<u64>,
}

impl IndexedGroup {
    pub fn new(group: &AbelianGroup, cap: u64) -> Result<Self> {
        check_cap(group, cap)?;
        let moduli: Vec<u64> = group
            .moduli()
            .map(|m| m.to_u64().expect("checked"))
            .collect();
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        let coords = group
            .elements(cap)?
            .map(|e| {
                e.coords()
                    .iter()
                    .map(|c| c.to_u64().expect("small"))
                    .collect()
            })
            .collect();
        Ok(IndexedGroup {
            moduli,
            coords,
            strides,
        })
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (&self.coords[a], &self.coords[b]);
        let mut idx = 0;
        for i in 0..self.moduli.len() {
            idx += ((ca[i] + cb[i]) % self.moduli[i]) * self.strides[i];
        }
        idx as usize
    }

    pub fn index_of(&self, e: &Element) -> usize {
        e.coords()
            .iter()
            .zip(&self.strides)
            .map(|(c, s)| c.to_u64().expect("small") * s)
            .sum::<u64>() as usize
    }

    pub fn element(&self, idx: usize) -> Element {
        Element::from_reduced(self.coords[idx].iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Membership mask of the subgroup generated by `gens`. Stops early
    /// once the closure is the whole group.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut list = vec![0usize];
        for &g in gens {
            if member[g] {
                continue;
            }
            // S + <g> is the union of the cosets S + j*g before j*g re-enters S.
            let base = list.clone();
            let mut shift = g;
            while !member[shift] {
                for &s in &base {
                    let x = self.add(s, shift);
                    if !member[x] {
                        member[x] = true;
                        list.push(x);
                    }
                }
                shift = self.add(shift, g);
            }
            if list.len() == n {
                break;
            }
        }
        member
    }

    pub fn closure_size(&self, gens: &[usize]) -> usize {
        self.closure(gens).iter().filter(|&&m| m).count()
    }

    /// Every subgroup, as membership masks, found by repeatedly adjoining
    /// single elements starting from the trivial subgroup.
    pub fn all_subgroups(&self) -> Vec<Vec<bool>> {
        let n = self.order();
        let trivial = self.closure(&[]);
        let mut seen: HashSet<Vec<bool>> = HashSet::from([trivial.clone()]);
        let mut frontier = vec![trivial];
        let mut out = Vec::new();
        while let Some(s) = frontier.pop() {
            let gens: Vec<usize> = (0..n).filter(|&i| s[i]).collect();
            for x in 0..n {
                if s[x] {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let t = self.closure(&g2);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
            out.push(s);
        }
        out.sort_by_key(|m| m.iter().filter(|&&b| b).count());
        out
    }

    /// `t` is orthogonal to `s` when `sum t_i s_i / N_i` is an integer.
    pub fn orthogonal_pair(&self, t: usize, s: usize) -> bool {
        let lcm = self.moduli.iter().fold(1u64, |a, &m| a.lcm(&m));
        let total: u128 = (0..self.moduli.len())
            .map(|i| {
                u128::from(self.coords[t][i])
                    * u128::from(self.coords[s][i])
                    * u128::from(lcm / self.moduli[i])
            })
            .sum();
        (total % u128::from(lcm)).is_zero()
    }

    /// `{t : t orthogonal to every member of the mask}` by direct check.
    pub fn orthogonal_by_definition(&self, mask: &[bool]) -> Vec<bool> {
        let members: Vec<usize> = (0..self.order()).filter(|&i| mask[i]).collect();
        (0..self.order())
            .map(|t| members.iter().all(|&s| self.orthogonal_pair(t, s)))
            .collect()
    }
}
