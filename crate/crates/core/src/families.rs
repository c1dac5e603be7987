//! Group and profile families used by the test suites and the `repro` harness.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ahsp::HspInstance;
use crate::group::{AbelianGroup, Element, NilpotentProfile, SylowEntry};
use crate::numbers::factorize;

pub const PRIMES_TO_97: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n`, one per isomorphism class.
pub fn abelian_groups_of_order(n: u64) -> Vec<AbelianGroup> {
    let mut groups = vec![Vec::<u64>::new()];
    for (p, e) in factorize(&BigUint::from(n)).expect("n >= 1") {
        let p = u64::try_from(p).expect("small prime");
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut h = g.clone();
                h.extend(part.iter().map(|&a| p.pow(a)));
                next.push(h);
            }
        }
        groups = next;
    }
    groups
        .iter()
        .map(|ds| AbelianGroup::from_u64s(ds).expect("prime powers"))
        .collect()
}

/// Every abelian group of order at most `max_order`, including the trivial one.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<AbelianGroup> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}

/// A random abelian group of order at most `max_order`, biased toward
/// small primes and several factors.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> AbelianGroup {
    let small = &PRIMES_TO_97[..12];
    let mut order: u64 = 1;
    let mut divisors = Vec::new();
    let attempts = rng.gen_range(1..=12);
    for _ in 0..attempts {
        let p = if rng.gen_bool(0.6) {
            *small[..3].choose(rng).expect("non-empty")
        } else {
            *small.choose(rng).expect("non-empty")
        };
        let e = rng.gen_range(1..=4u32);
        let q = p.pow(e);
        if order.saturating_mul(q) <= max_order {
            order *= q;
            divisors.push(q);
        }
    }
    AbelianGroup::from_u64s(&divisors).expect("prime powers")
}

/// A random profile: up to four distinct primes at most 97, Sylow ranks at
/// most 8 and Sylow lengths at most 16.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R) -> NilpotentProfile {
    let h = rng.gen_range(0..=4);
    let mut primes: Vec<u64> = PRIMES_TO_97.choose_multiple(rng, h).copied().collect();
    primes.sort_unstable();
    let entries = primes
        .into_iter()
        .map(|p| {
            let rank = rng.gen_range(1..=8u32);
            let length = rng.gen_range(u64::from(rank)..=16);
            SylowEntry {
                prime: BigUint::from(p),
                rank,
                length,
            }
        })
        .collect();
    NilpotentProfile::new(entries).expect("valid by construction")
}

/// A random group with a hidden subgroup generated by up to three random elements.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> HspInstance {
    let group = random_group(rng, max_order);
    let gens: Vec<Element> = (0..rng.gen_range(0..=3))
        .map(|_| group.sample_uniform(rng))
        .collect();
    HspInstance::new(group, &gens).expect("generators are in the group")
}
