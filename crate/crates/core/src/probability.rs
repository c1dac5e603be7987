//! The probability `phi_k(G)` that `k` uniform independent elements
//! generate `G`.
//!
//! For a nilpotent group, `phi_k` factors over Sylow subgroups and depends
//! only on the Frattini quotient, which is `(Z/p)^r` at each prime. Hence
//! `phi_k(G) = prod_p prod_{i<r_p} (1 - p^{i-k})`, evaluated here as an
//! exact rational. [`count_generating_tuples`] is the brute-force route and
//! [`estimate_phi`] the sampled one.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::brute::IndexedGroup;
use crate::group::{trial_rng, AbelianGroup, Element, NilpotentProfile};
use crate::numbers::{is_prime, rational_serde};

pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;

/// `phi_k` for a group with the given profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiValue {
    pub k: u64,
    pub value: BigRational,
    pub profile: NilpotentProfile,
}

/// `{"k": 5, "value": {"num": "21", "den": "32"}, "profile": "2:2:2"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiValueJson {
    pub k: u64,
    #[serde(with = "rational_serde")]
    pub value: BigRational,
    pub profile: String,
}

impl PhiValue {
    pub fn to_json(&self) -> PhiValueJson {
        PhiValueJson {
            k: self.k,
            value: self.value.clone(),
            profile: self.profile.to_string(),
        }
    }
}

/// `phi_k((Z/p)^r)`; errors if `p` is not prime.
pub fn phi_p_rank(p: &BigUint, r: u32, k: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(phi_elementary(p, r, k))
}

pub(crate) fn phi_elementary(p: &BigUint, r: u32, k: u64) -> BigRational {
    let r64 = u64::from(r);
    if k < r64 {
        return BigRational::zero();
    }
    let mut num = BigUint::one();
    let mut den_exp: u64 = 0;
    for i in 0..r64 {
        let e = k - i;
        num *= p.pow(e as u32) - 1u32;
        den_exp += e;
    }
    // every factor p^e - 1 is coprime to p, so the fraction is already reduced
    BigRational::new_raw(BigInt::from(num), BigInt::from(p.pow(den_exp as u32)))
}

pub fn phi_profile(profile: &NilpotentProfile, k: u64) -> PhiValue {
    let value = profile
        .entries()
        .iter()
        .map(|e| phi_elementary(&e.prime, e.rank, k))
        .fold(BigRational::one(), |acc, x| acc * x);
    PhiValue {
        k,
        value,
        profile: profile.clone(),
    }
}

pub fn phi_abelian(group: &AbelianGroup, k: u64) -> PhiValue {
    phi_profile(&group.sylow_profile(), k)
}

/// Number of `k`-tuples of elements that generate `group`, by enumerating
/// every tuple and closing it under addition. Requires `|G|^k <= cap`.
pub fn count_generating_tuples(group: &AbelianGroup, k: u32, cap: u64) -> Result<u64> {
    let order = group.order();
    let tuples = order.pow(k);
    if tuples > BigUint::from(cap) {
        return Err(Error::limit(format!(
            "{order}^{k} tuples exceed the enumeration cap {cap}"
        )));
    }
    if k == 0 {
        return Ok(u64::from(group.is_trivial()));
    }
    let ig = IndexedGroup::new(group, cap)?;
    let n = ig.order();
    let k = k as usize;
    let count = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut tuple = vec![0usize; k];
            tuple[0] = first;
            let mut hits = 0u64;
            loop {
                if ig.closure_size(&tuple) == n {
                    hits += 1;
                }
                // odometer over positions 1..k
                let mut pos = k - 1;
                loop {
                    if pos == 0 {
                        return hits;
                    }
                    tuple[pos] += 1;
                    if tuple[pos] < n {
                        break;
                    }
                    tuple[pos] = 0;
                    pos -= 1;
                }
            }
        })
        .sum();
    Ok(count)
}

/// `N_k(G) / |G|^k` from the brute-force count.
pub fn phi_by_counting(group: &AbelianGroup, k: u32, cap: u64) -> Result<BigRational> {
    let count = count_generating_tuples(group, k, cap)?;
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(group.order().pow(k)),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub k: u64,
    pub trials: u64,
    pub successes: u64,
    #[serde(with = "rational_serde")]
    pub point_estimate: BigRational,
    #[serde(with = "rational_serde")]
    pub confidence_halfwidth: BigRational,
    pub seed: u64,
}

impl MonteCarloEstimate {
    pub fn from_counts(k: u64, trials: u64, successes: u64, seed: u64) -> Self {
        MonteCarloEstimate {
            k,
            trials,
            successes,
            point_estimate: BigRational::new(successes.into(), trials.into()),
            confidence_halfwidth: confidence_halfwidth(successes, trials),
            seed,
        }
    }

    /// Whether `value` lies in `[estimate - halfwidth, estimate + halfwidth]`.
    pub fn covers(&self, value: &BigRational) -> bool {
        (&self.point_estimate - value).abs() <= self.confidence_halfwidth
    }
}

/// Two-sided 99% normal-approximation half-width
/// `z * sqrt(p(1-p)/n)` with `p = successes/trials`.
///
/// `z = 2.576` (the 0.995 normal quantile 2.5758... rounded up) and the
/// square root is rounded up to a multiple of `1e-12`, so the result is an
/// exact rational that never understates the interval.
pub fn confidence_halfwidth(successes: u64, trials: u64) -> BigRational {
    assert!(trials > 0 && successes <= trials);
    if successes == 0 || successes == trials {
        return BigRational::zero();
    }
    let scale = BigUint::from(10u32).pow(12);
    let n = BigUint::from(trials);
    let var_num = BigUint::from(successes) * BigUint::from(trials - successes) * &scale * &scale;
    let var_den = &n * &n * &n;
    let mut x = &var_num / &var_den;
    if &x * &var_den != var_num {
        x += 1u32;
    }
    let mut root = x.sqrt();
    if &root * &root < x {
        root += 1u32;
    }
    BigRational::new(BigInt::from(root * 322u32), BigInt::from(scale * 125u32))
}

fn trial_succeeds(group: &AbelianGroup, k: u64, seed: u64, index: u64) -> bool {
    let mut rng = trial_rng(seed, index);
    let sample: Vec<Element> = (0..k).map(|_| group.sample_uniform(&mut rng)).collect();
    group
        .span(&sample)
        .expect("samples belong to the group")
        .is_full()
}

/// Monte Carlo estimate of `phi_k(G)`: trial `i` draws `k` elements from
/// [`trial_rng`]`(seed, i)` and succeeds when they span `G`.
pub fn estimate_phi(
    group: &AbelianGroup,
    k: u64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| trial_succeeds(group, k, seed, i))
        .count() as u64;
    Ok(MonteCarloEstimate::from_counts(k, trials, successes, seed))
}
