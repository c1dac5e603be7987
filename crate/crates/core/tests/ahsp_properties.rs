#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use nilgen::ahsp::{
    exact_success_probability, plan_for_instance, recover_subgroup, sample_hperp, simulate_plan,
    HspInstance, Strategy as PlanStrategy,
};
use nilgen::families::{abelian_groups_up_to, random_instance};
use nilgen::group::brute::IndexedGroup;
use nilgen::group::{trial_rng, AbelianGroup, Element, Subgroup};
use nilgen::probability::MonteCarloEstimate;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn subgroups(g: &AbelianGroup, ig: &IndexedGroup) -> Vec<(Vec<bool>, Subgroup)> {
    ig.all_subgroups()
        .into_iter()
        .map(|mask| {
            let gens: Vec<Element> = (0..ig.order())
                .filter(|&i| mask[i])
                .map(|i| ig.element(i))
                .collect();
            let h = g.span(&gens).unwrap();
            (mask, h)
        })
        .collect()
}

#[test]
fn duality_laws_up_to_order_64() {
    for g in abelian_groups_up_to(64) {
        let ig = IndexedGroup::new(&g, 100).unwrap();
        for (mask, h) in subgroups(&g, &ig) {
            let perp = h.orthogonal();
            assert_eq!(perp.orthogonal(), h, "{g}: {h}");
            assert_eq!(h.order() * perp.order(), g.order());
            assert_eq!(h.len() + perp.len(), g.len());
            assert!(g.rank() <= h.rank() + perp.rank());
            assert_eq!(perp.structure(), h.quotient_structure(), "H^perp ~ G/H");

            let by_def = ig.orthogonal_by_definition(&mask);
            for i in 0..ig.order() {
                assert_eq!(perp.contains(&ig.element(i)).unwrap(), by_def[i]);
            }
        }
    }
}

/// The recovered subgroup is exactly the set of x with sum t_i x_i / N_i in Z
/// for every sample t.
#[test]
fn recovery_equals_literal_solution_set() {
    for g in abelian_groups_up_to(32) {
        let ig = IndexedGroup::new(&g, 100).unwrap();
        let n = ig.order();
        let mut rng = trial_rng(17, n as u64);
        for _ in 0..6 {
            let samples: Vec<usize> = (0..3)
                .map(|_| rand::Rng::gen_range(&mut rng, 0..n))
                .collect();
            let elems: Vec<Element> = samples.iter().map(|&i| ig.element(i)).collect();
            let a = recover_subgroup(&g, &elems).unwrap();
            for x in 0..n {
                let solves = samples.iter().all(|&t| ig.orthogonal_pair(x, t));
                assert_eq!(a.contains(&ig.element(x)).unwrap(), solves);
            }
        }
    }
}

proptest! {
    #[test]
    fn samples_satisfy_congruences_and_recovery_contains_h(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = trial_rng(seed, 0);
        let inst = random_instance(&mut rng, 1 << 12);
        let g = inst.group();
        let h = inst.hidden();
        let samples: Vec<Element> = (0..k).map(|_| sample_hperp(g, h, &mut rng).unwrap()).collect();
        let perp = h.orthogonal();
        for t in &samples {
            prop_assert!(perp.contains(t).unwrap());
            for s in h.generators() {
                // sum t_i s_i / N_i in Z, checked directly
                let mut acc = BigRational::from_integer(0.into());
                for ((ti, si), m) in t.coords().iter().zip(s.coords()).zip(g.moduli()) {
                    acc += BigRational::new((ti * si).into(), m.clone().into());
                }
                prop_assert!(acc.is_integer());
            }
        }
        let a = recover_subgroup(g, &samples).unwrap();
        prop_assert!(h.is_subgroup_of(&a).unwrap());
    }
}

#[test]
fn planned_iterations_are_sound() {
    for i in 0..50 {
        let inst = random_instance(&mut trial_rng(4242, i), 1 << 16);
        for eps in [rat(1, 2), rat(1, 4), rat(1, 10)] {
            for strategy in [
                PlanStrategy::Rank,
                PlanStrategy::Len,
                PlanStrategy::LenUnknownH,
            ] {
                let plan = plan_for_instance(&inst, &eps, strategy).unwrap();
                let exact = exact_success_probability(&inst, plan.k);
                assert!(
                    exact >= BigRational::one() - &eps,
                    "{} {strategy}",
                    inst.group()
                );
            }
        }
        if i < 10 {
            let plan = plan_for_instance(&inst, &rat(1, 4), PlanStrategy::Len).unwrap();
            let sim = simulate_plan(&inst, &plan, 4_000, i).unwrap();
            let exact = exact_success_probability(&inst, plan.k);
            let est = MonteCarloEstimate::from_counts(plan.k, sim.trials, sim.successes, sim.seed);
            assert!(
                est.covers(&exact) || exact.is_one(),
                "{}: {} vs {exact}",
                inst.group(),
                sim.point_estimate
            );
        }
    }
}

#[test]
fn simulated_rate_tracks_orthogonal_phi() {
    let g = AbelianGroup::from_u64s(&[2, 4, 3]).unwrap();
    let h = g
        .span(&[Element::from_i64s(&g, &[1, 2, 0]).unwrap()])
        .unwrap();
    let inst = HspInstance::from_subgroup(h);
    for k in 1..=4 {
        let sim = nilgen::ahsp::simulate_ahsp(&inst, k, 20_000, 5).unwrap();
        let exact = exact_success_probability(&inst, k);
        let est = MonteCarloEstimate::from_counts(k, sim.trials, sim.successes, sim.seed);
        // four checks at once: allow 1.5 half-widths (about 3.9 sigma) each
        let slack = &est.confidence_halfwidth * rat(3, 2);
        let diff = &est.point_estimate - &exact;
        assert!(
            diff <= slack && -diff <= slack,
            "k={k}: {} vs {exact}",
            sim.point_estimate
        );
    }
}
