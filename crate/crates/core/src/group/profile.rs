use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::AbelianGroup;
use crate::error::{Error, Result};
use crate::numbers::is_prime;

/// One Sylow component: prime, rank and composition length of the Sylow subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SylowEntry {
    pub prime: BigUint,
    pub rank: u32,
    pub length: u64,
}

/// Per-prime rank/length data of a finite nilpotent group.
///
/// This is all that the generation probability and both sampling bounds
/// depend on. Entries are sorted by strictly increasing prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NilpotentProfile {
    entries: Vec<SylowEntry>,
}

impl NilpotentProfile {
    pub fn trivial() -> Self {
        NilpotentProfile::default()
    }

    pub fn new(entries: Vec<SylowEntry>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[0].prime >= w[1].prime {
                return Err(Error::invalid("profile primes must be strictly increasing"));
            }
        }
        for e in &entries {
            if !is_prime(&e.prime) {
                return Err(Error::invalid(format!("{} is not prime", e.prime)));
            }
            if e.rank == 0 {
                return Err(Error::invalid(format!(
                    "rank for prime {} must be >= 1",
                    e.prime
                )));
            }
            if e.length < u64::from(e.rank) {
                return Err(Error::invalid(format!(
                    "length {} is below rank {} for prime {}",
                    e.length, e.rank, e.prime
                )));
            }
        }
        Ok(NilpotentProfile { entries })
    }

    pub(crate) fn new_unchecked(entries: Vec<SylowEntry>) -> Self {
        NilpotentProfile { entries }
    }

    pub fn from_triples(triples: &[(u64, u32, u64)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(p, rank, length)| SylowEntry {
                    prime: BigUint::from(p),
                    rank,
                    length,
                })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[SylowEntry] {
        &self.entries
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest Sylow rank; 0 for the trivial group.
    pub fn rank(&self) -> u32 {
        self.entries.iter().map(|e| e.rank).max().unwrap_or(0)
    }

    /// Sum of Sylow composition lengths; 0 for the trivial group.
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|e| e.length).sum()
    }

    pub fn frattini_quotient(&self) -> NilpotentProfile {
        NilpotentProfile {
            entries: self
                .entries
                .iter()
                .map(|e| SylowEntry {
                    length: u64::from(e.rank),
                    ..e.clone()
                })
                .collect(),
        }
    }
}

/// Parses `"p:r:l[,p:r:l...]"`; the empty string is the trivial profile.
impl FromStr for NilpotentProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let [p, r, l] = fields[..] else {
                return Err(Error::invalid(format!(
                    "profile entry '{part}' is not p:r:l"
                )));
            };
            let bad = || Error::invalid(format!("profile entry '{part}' is not p:r:l"));
            entries.push(SylowEntry {
                prime: p.parse().map_err(|_| bad())?,
                rank: r.parse().map_err(|_| bad())?,
                length: l.parse().map_err(|_| bad())?,
            });
        }
        entries.sort_by(|a, b| a.prime.cmp(&b.prime));
        NilpotentProfile::new(entries)
    }
}

impl fmt::Display for NilpotentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}:{}:{}", e.prime, e.rank, e.length))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl AbelianGroup {
    pub fn sylow_profile(&self) -> NilpotentProfile {
        let mut entries: Vec<SylowEntry> = Vec::new();
        for f in self.factors() {
            match entries.last_mut() {
                Some(last) if &last.prime == f.prime() => {
                    last.rank += 1;
                    last.length += u64::from(f.exponent());
                }
                _ => entries.push(SylowEntry {
                    prime: f.prime().clone(),
                    rank: 1,
                    length: u64::from(f.exponent()),
                }),
            }
        }
        NilpotentProfile::new_unchecked(entries)
    }

    /// Profile of `G / Phi(G)`, elementary abelian at each prime.
    pub fn frattini_quotient_profile(&self) -> NilpotentProfile {
        self.sylow_profile().frattini_quotient()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> u32 {
        self.sylow_profile().rank()
    }

    /// Composition length: the number of prime factors of `|G|` with multiplicity.
    pub fn len(&self) -> u64 {
        self.factors().iter().map(|f| u64::from(f.exponent())).sum()
    }

    /// Primes dividing the group order, increasing.
    pub fn primes(&self) -> Vec<BigUint> {
        let mut ps: Vec<BigUint> = self.factors().iter().map(|f| f.prime().clone()).collect();
        ps.dedup();
        ps
    }

    /// The Sylow p-subgroup as a group in its own right.
    pub fn sylow(&self, prime: &BigUint) -> AbelianGroup {
        AbelianGroup::from_factors(
            self.factors()
                .iter()
                .filter(|f| f.prime() == prime)
                .cloned()
                .collect(),
        )
    }
}

/// The direct sum of two groups in elementary-divisor form.
pub fn direct_sum(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut fs = a.factors().to_vec();
    fs.extend(b.factors().iter().cloned());
    AbelianGroup::from_factors(fs)
}
