use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nilgen::families::{abelian_groups_up_to, random_profile};
use nilgen::group::{direct_sum, trial_rng, AbelianGroup, NilpotentProfile};
use nilgen::probability::{
    estimate_phi, phi_abelian, phi_by_counting, phi_p_rank, phi_profile, DEFAULT_TUPLE_CAP,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn profile_strategy() -> impl Strategy<Value = NilpotentProfile> {
    any::<u64>().prop_map(|s| random_profile(&mut trial_rng(s, 0)))
}

#[test]
fn exact_matches_counting_on_groups_up_to_32() {
    for g in abelian_groups_up_to(32) {
        for k in 0..=3u32 {
            assert_eq!(
                phi_abelian(&g, u64::from(k)).value,
                phi_by_counting(&g, k, DEFAULT_TUPLE_CAP).unwrap(),
                "{g} k={k}"
            );
        }
    }
}

#[test]
fn frattini_invariance_by_counting() {
    for p in [2u64, 3, 5] {
        let base = AbelianGroup::from_u64s(&[p]).unwrap();
        for a in 1..=3u32 {
            let g = AbelianGroup::from_u64s(&[p.pow(a)]).unwrap();
            for k in 0..=3u32 {
                let cap = DEFAULT_TUPLE_CAP;
                if g.order().pow(k) > BigUint::from(cap) {
                    continue;
                }
                assert_eq!(
                    phi_by_counting(&g, k, cap).unwrap(),
                    phi_by_counting(&base, k, cap).unwrap()
                );
                assert_eq!(
                    phi_abelian(&g, u64::from(k)).value,
                    phi_abelian(&base, u64::from(k)).value
                );
            }
        }
    }
}

#[test]
fn product_law_by_counting() {
    let groups = abelian_groups_up_to(64);
    for a in &groups {
        for b in &groups {
            let (na, nb) = (a.order_u64().unwrap(), b.order_u64().unwrap());
            if na * nb > 64 || num_integer::gcd(na, nb) != 1 || a.is_trivial() || b.is_trivial() {
                continue;
            }
            let sum = direct_sum(a, b);
            for k in 1..=3u32 {
                let lhs = phi_by_counting(&sum, k, DEFAULT_TUPLE_CAP).unwrap();
                let rhs = phi_by_counting(a, k, DEFAULT_TUPLE_CAP).unwrap()
                    * phi_by_counting(b, k, DEFAULT_TUPLE_CAP).unwrap();
                assert_eq!(lhs, rhs, "{a} + {b}, k={k}");
            }
        }
    }
}

proptest! {
    #[test]
    fn monotone_in_k(profile in profile_strategy(), k in 0u64..30) {
        let a = phi_profile(&profile, k).value;
        let b = phi_profile(&profile, k + 1).value;
        prop_assert!(b >= a);
        if b == a {
            prop_assert!(profile.is_trivial() || a.is_zero());
        }
    }

    #[test]
    fn two_is_the_worst_prime(p_idx in 0usize..25, r in 0u32..8, k in 0u64..20) {
        let p = BigUint::from(nilgen::families::PRIMES_TO_97[p_idx]);
        let two = BigUint::from(2u32);
        prop_assert!(phi_p_rank(&p, r, k).unwrap() >= phi_p_rank(&two, r, k).unwrap());
    }

    #[test]
    fn value_in_unit_interval_and_zero_below_rank(profile in profile_strategy(), k in 0u64..40) {
        let v = phi_profile(&profile, k).value;
        prop_assert!(v >= BigRational::zero() && v <= BigRational::one());
        if k < u64::from(profile.rank()) {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn tends_to_one(profile in profile_strategy()) {
        let k = u64::from(profile.rank()) + 40;
        let v = phi_profile(&profile, k).value;
        prop_assert!(v > BigRational::one() - rat(1, 1_000_000_000));
    }
}

/// Normal-approximation intervals should cover the exact value in at least
/// 99 of 100 independent seeds.
#[test]
fn monte_carlo_interval_coverage() {
    let g = AbelianGroup::from_u64s(&[12]).unwrap();
    let exact = phi_abelian(&g, 2).value;
    let covered = (0..100u64)
        .filter(|&seed| {
            estimate_phi(&g, 2, 2_000, 1_000 + seed)
                .unwrap()
                .covers(&exact)
        })
        .count();
    assert!(covered >= 99, "covered {covered}/100");
}
