//! Sufficient sample counts for generating a finite nilpotent group with
//! probability at least `1 - eps`, the exact minimum, and witnesses that
//! the sufficient counts cannot be lowered much.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, NilpotentProfile};
use crate::numbers::{ceil_log2, check_epsilon, rational_serde};
use crate::probability::phi_profile;

fn ceil_log2_of(x: BigRational) -> u64 {
    let c = ceil_log2(&x).expect("argument is positive");
    u64::try_from(c).expect("argument is at least 1")
}

/// `rank + ceil(log2(2/eps))`
pub fn rank_bound(rank: u64, epsilon: &BigRational) -> Result<u64> {
    check_epsilon(epsilon)?;
    Ok(rank + ceil_log2_of(BigRational::from_integer(2.into()) / epsilon))
}

/// `len + ceil(log2(1/eps))`
pub fn len_bound(len: u64, epsilon: &BigRational) -> Result<u64> {
    check_epsilon(epsilon)?;
    Ok(len + ceil_log2_of(epsilon.recip()))
}

/// The earlier order-based requirement `ceil(log2|G| + 2 + log2(1/eps))`,
/// evaluated as `ceil(log2(4|G|/eps))`.
pub fn pak_bound(group_order: &BigUint, epsilon: &BigRational) -> Result<u64> {
    check_epsilon(epsilon)?;
    if group_order.is_zero() {
        return Err(Error::invalid("group order must be at least 1"));
    }
    let x = BigRational::from_integer(BigInt::from(group_order.clone()) * 4) / epsilon;
    Ok(ceil_log2_of(x))
}

/// Smallest `k` with `phi_k >= 1 - eps`, scanning upward from the rank.
pub fn min_k_exact(profile: &NilpotentProfile, epsilon: &BigRational) -> Result<u64> {
    check_epsilon(epsilon)?;
    let target = BigRational::one() - epsilon;
    let mut k = u64::from(profile.rank());
    while phi_profile(profile, k).value < target {
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "rational_serde")]
    pub epsilon: BigRational,
    pub profile: String,
    pub rank: u32,
    pub len: u64,
    pub rank_bound_k: u64,
    pub len_bound_k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pak_bound_k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_min_k: Option<u64>,
    pub phi_at_each: PhiAtBounds,
    /// `phi >= 1 - eps` at both the rank and the length bound.
    pub guarantee_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiAtBounds {
    #[serde(with = "rational_serde")]
    pub rank_bound: BigRational,
    #[serde(with = "rational_serde")]
    pub len_bound: BigRational,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_rational"
    )]
    pub pak_bound: Option<BigRational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_rational"
    )]
    pub exact_min_k: Option<BigRational>,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::numbers::RationalJson;

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(RationalJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<RationalJson>::deserialize(d)?
            .map(|r| BigRational::try_from(r).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// All bounds for a profile. `group_order` enables the order-based
/// comparator, which a profile alone does not determine.
pub fn bound_report(
    profile: &NilpotentProfile,
    epsilon: &BigRational,
    group_order: Option<&BigUint>,
    with_exact_min_k: bool,
) -> Result<BoundReport> {
    check_epsilon(epsilon)?;
    let rank_k = rank_bound(u64::from(profile.rank()), epsilon)?;
    let len_k = len_bound(profile.len(), epsilon)?;
    let pak_k = group_order.map(|n| pak_bound(n, epsilon)).transpose()?;
    let exact = if with_exact_min_k {
        Some(min_k_exact(profile, epsilon)?)
    } else {
        None
    };
    let phi = |k: u64| phi_profile(profile, k).value;
    let phi_at_each = PhiAtBounds {
        rank_bound: phi(rank_k),
        len_bound: phi(len_k),
        pak_bound: pak_k.map(phi),
        exact_min_k: exact.map(phi),
    };
    let target = BigRational::one() - epsilon;
    let guarantee_holds = phi_at_each.rank_bound >= target && phi_at_each.len_bound >= target;
    Ok(BoundReport {
        epsilon: epsilon.clone(),
        profile: profile.to_string(),
        rank: profile.rank(),
        len: profile.len(),
        rank_bound_k: rank_k,
        len_bound_k: len_k,
        pak_bound_k: pak_k,
        exact_min_k: exact,
        phi_at_each,
        guarantee_holds,
    })
}

pub fn bound_report_for_group(
    group: &AbelianGroup,
    epsilon: &BigRational,
    with_exact_min_k: bool,
) -> Result<BoundReport> {
    bound_report(
        &group.sylow_profile(),
        epsilon,
        Some(&group.order()),
        with_exact_min_k,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TightnessMode {
    Len,
    Rank,
}

impl FromStr for TightnessMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "len" => Ok(TightnessMode::Len),
            "rank" => Ok(TightnessMode::Rank),
            other => Err(Error::invalid(format!(
                "unknown mode '{other}', expected len or rank"
            ))),
        }
    }
}

impl fmt::Display for TightnessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TightnessMode::Len => "len",
            TightnessMode::Rank => "rank",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessWitness {
    pub mode: TightnessMode,
    pub group: AbelianGroup,
    /// The reduced sample count before clamping at zero.
    pub raw_k: i64,
    pub k: u64,
    pub phi: BigRational,
    pub epsilon: BigRational,
    /// `phi_k < 1 - eps`
    pub claim_holds: bool,
}

/// Evaluates `(Z/2)^size` one below the length bound's slack
/// (`len + ceil(log2(1/eps)) - 2`) or two below the rank bound's
/// (`rank + ceil(log2(2/eps)) - 3`).
pub fn tightness_witness(
    mode: TightnessMode,
    size: u32,
    epsilon: &BigRational,
) -> Result<TightnessWitness> {
    check_epsilon(epsilon)?;
    if size == 0 {
        return Err(Error::invalid("witness size must be at least 1"));
    }
    let group = AbelianGroup::elementary(2, size as usize)?;
    let raw_k = match mode {
        TightnessMode::Len => len_bound(group.len(), epsilon)? as i64 - 2,
        TightnessMode::Rank => rank_bound(u64::from(group.rank()), epsilon)? as i64 - 3,
    };
    let k = raw_k.max(0) as u64;
    let phi = phi_profile(&group.sylow_profile(), k).value;
    let claim_holds = phi < BigRational::one() - epsilon;
    Ok(TightnessWitness {
        mode,
        group,
        raw_k,
        k,
        phi,
        epsilon: epsilon.clone(),
        claim_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessJson {
    pub mode: TightnessMode,
    pub n: u32,
    pub group: crate::group::GroupSpec,
    pub raw_k: i64,
    pub k: u64,
    #[serde(with = "rational_serde")]
    pub phi: BigRational,
    #[serde(with = "rational_serde")]
    pub epsilon: BigRational,
    pub claim_holds: bool,
}

impl TightnessWitness {
    pub fn to_json(&self) -> TightnessJson {
        TightnessJson {
            mode: self.mode,
            n: self.group.num_factors() as u32,
            group: self.group.divisors_json(),
            raw_k: self.raw_k,
            k: self.k,
            phi: self.phi.clone(),
            epsilon: self.epsilon.clone(),
            claim_holds: self.claim_holds,
        }
    }
}
