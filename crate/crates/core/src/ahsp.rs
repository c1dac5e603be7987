//! Classical post-processing for the abelian hidden subgroup problem.
//!
//! Each run of the quantum routine yields a uniform element of `H^perp`;
//! that measurement distribution is sampled directly here. After `k` runs
//! the candidate answer is the solution set of the congruences
//! `sum_i t_i x_i / N_i in Z`, which is the orthogonal of the span of the
//! samples. It equals `H` exactly when the samples generate `H^perp`, so
//! the success probability is `phi_k(H^perp)`.
//!
//! `H^perp` is taken with respect to the group's elementary-divisor
//! coordinates as parsed.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use num_rational::BigRational;
use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{len_bound, rank_bound};
use crate::error::{Error, Result};
use crate::group::{trial_rng, AbelianGroup, Element, ElementJson, GroupSpec, Subgroup};
use crate::numbers::{check_epsilon, rational_serde, BigNat};
use crate::probability::{confidence_halfwidth, phi_abelian};

/// A group together with its hidden subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HspInstance {
    group: AbelianGroup,
    hidden: Subgroup,
}

impl HspInstance {
    pub fn new(group: AbelianGroup, hidden_generators: &[Element]) -> Result<Self> {
        let hidden = group.span(hidden_generators)?;
        Ok(HspInstance { group, hidden })
    }

    pub fn from_subgroup(hidden: Subgroup) -> Self {
        HspInstance {
            group: hidden.ambient().clone(),
            hidden,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn hidden(&self) -> &Subgroup {
        &self.hidden
    }

    pub fn from_json(json: &HspInstanceJson) -> Result<Self> {
        let group = json.group.to_group()?;
        let gens = json
            .hidden_subgroup_generators
            .iter()
            .map(|coords| {
                ElementJson {
                    coords: coords.clone(),
                }
                .to_element(&group)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, &gens)
    }

    pub fn to_json(&self) -> HspInstanceJson {
        HspInstanceJson {
            group: self.group.divisors_json(),
            hidden_subgroup_generators: self
                .hidden
                .generators()
                .iter()
                .map(|g| g.coords().iter().cloned().map(BigNat).collect())
                .collect(),
        }
    }
}

/// `{"group": {"divisors": [...]}, "hidden_subgroup_generators": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HspInstanceJson {
    pub group: GroupSpec,
    pub hidden_subgroup_generators: Vec<Vec<BigNat>>,
}

fn check_ambient(group: &AbelianGroup, h: &Subgroup) -> Result<()> {
    if h.ambient() != group {
        return Err(Error::invalid(format!(
            "subgroup lives in {}, not {group}",
            h.ambient()
        )));
    }
    Ok(())
}

pub fn orthogonal_subgroup(group: &AbelianGroup, h: &Subgroup) -> Result<Subgroup> {
    check_ambient(group, h)?;
    Ok(h.orthogonal())
}

/// One simulated measurement: a uniform element of `H^perp`.
pub fn sample_hperp<R: RngCore + ?Sized>(
    group: &AbelianGroup,
    h: &Subgroup,
    rng: &mut R,
) -> Result<Element> {
    Ok(orthogonal_subgroup(group, h)?.sample_uniform(rng))
}

/// Solution set of the congruence system built from `samples`.
pub fn recover_subgroup(group: &AbelianGroup, samples: &[Element]) -> Result<Subgroup> {
    Ok(group.span(samples)?.orthogonal())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// `rank(G) + ceil(log2(2/eps))`
    Rank,
    /// `len(G) - len(H) + ceil(log2(1/eps))`
    Len,
    /// `len(G) + ceil(log2(1/eps))`, for when `len(H)` is not known
    LenUnknownH,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(Strategy::Rank),
            "len" => Ok(Strategy::Len),
            "len_unknown_h" | "len-unknown-h" | "len_unknown_H" => Ok(Strategy::LenUnknownH),
            other => Err(Error::invalid(format!(
                "unknown strategy '{other}', expected rank, len or len_unknown_h"
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Rank => "rank",
            Strategy::Len => "len",
            Strategy::LenUnknownH => "len_unknown_h",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationPlan {
    pub strategy: Strategy,
    pub k: u64,
    #[serde(with = "rational_serde")]
    pub epsilon: BigRational,
}

/// Number of quantum iterations guaranteeing recovery with probability `1 - eps`.
pub fn plan_iterations(
    group: &AbelianGroup,
    epsilon: &BigRational,
    hidden_len: Option<u64>,
    strategy: Strategy,
) -> Result<IterationPlan> {
    check_epsilon(epsilon)?;
    let k = match strategy {
        Strategy::Rank => rank_bound(u64::from(group.rank()), epsilon)?,
        Strategy::Len => {
            let h_len = hidden_len
                .ok_or_else(|| Error::invalid("the len strategy needs the length of H"))?;
            if h_len > group.len() {
                return Err(Error::invalid(format!(
                    "len(H) = {h_len} exceeds len(G) = {}",
                    group.len()
                )));
            }
            len_bound(group.len() - h_len, epsilon)?
        }
        Strategy::LenUnknownH => len_bound(group.len(), epsilon)?,
    };
    Ok(IterationPlan {
        strategy,
        k,
        epsilon: epsilon.clone(),
    })
}

pub fn plan_for_instance(
    instance: &HspInstance,
    epsilon: &BigRational,
    strategy: Strategy,
) -> Result<IterationPlan> {
    plan_iterations(
        &instance.group,
        epsilon,
        Some(instance.hidden.len()),
        strategy,
    )
}

/// `Pr(A = H)` after `k` iterations, i.e. `phi_k(H^perp)`.
pub fn exact_success_probability(instance: &HspInstance, k: u64) -> BigRational {
    phi_abelian(&instance.hidden.orthogonal().structure(), k).value
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub k: u64,
    pub trials: u64,
    pub successes: u64,
    #[serde(with = "rational_serde")]
    pub point_estimate: BigRational,
    #[serde(with = "rational_serde")]
    pub confidence_halfwidth: BigRational,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<IterationPlan>,
}

/// Runs `trials` independent executions with `k` measurements each.
/// Trial `i` draws from [`trial_rng`]`(seed, i)`.
pub fn simulate_ahsp(
    instance: &HspInstance,
    k: u64,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let hperp = instance.hidden.orthogonal();
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(seed, i);
            let samples: Vec<Element> = (0..k).map(|_| hperp.sample_uniform(&mut rng)).collect();
            let recovered = recover_subgroup(&instance.group, &samples).expect("samples lie in G");
            recovered == instance.hidden
        })
        .count() as u64;
    Ok(SimulationResult {
        k,
        trials,
        successes,
        point_estimate: BigRational::new(successes.into(), trials.into()),
        confidence_halfwidth: confidence_halfwidth(successes, trials),
        seed,
        plan: None,
    })
}

pub fn simulate_plan(
    instance: &HspInstance,
    plan: &IterationPlan,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    let mut result = simulate_ahsp(instance, plan.k, trials, seed)?;
    result.plan = Some(plan.clone());
    Ok(result)
}

/// Circuit repetitions for Regev's factoring algorithm on a group of the given rank.
pub fn regev_repetitions(rank: u64) -> u64 {
    rank + 2
}

/// For an `n`-bit modulus the relevant rank is `ceil(sqrt(n))`. Returns
/// `(improved, previous)` repetition counts, `ceil(sqrt(n)) + 2` and `+ 4`.
pub fn regev_repetitions_for_bits(n_bits: u64) -> Result<(u64, u64)> {
    if n_bits == 0 {
        return Err(Error::invalid("bit length must be positive"));
    }
    let d = ceil_sqrt(n_bits);
    Ok((regev_repetitions(d), d + 4))
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}
