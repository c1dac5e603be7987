//! The reproduction checks: each criterion compares the library's exact
//! results against an independent route (enumeration, closure, simulation)
//! or against the stated inequality, with zero tolerance unless noted.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::ahsp::{exact_success_probability, plan_for_instance, simulate_plan, Strategy};
use crate::bounds::{len_bound, pak_bound, rank_bound, tightness_witness, TightnessMode};
use crate::families::{abelian_groups_up_to, random_group, random_instance, random_profile};
use crate::group::brute::IndexedGroup;
use crate::group::{trial_rng, AbelianGroup, Subgroup};
use crate::probability::{
    estimate_phi, phi_abelian, phi_by_counting, phi_profile, DEFAULT_TUPLE_CAP,
};

const SEED_PROFILES: u64 = 0x5eed_0002;
const SEED_GROUPS: u64 = 0x5eed_0004;
const SEED_SPOT_CHECK: u64 = 0x5eed_0044;
const SEED_INSTANCES: u64 = 0x5eed_0006;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {} {:<22} checks={:<7} {:>7} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.elapsed_ms,
            self.detail
        )
    }
}

struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, id: u8, name: &str, start: Instant, summary: String) -> CriterionOutcome {
        let passed = self.failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!(
                "{} failures, e.g. {}",
                self.failures.len(),
                shown.join("; ")
            )
        };
        CriterionOutcome {
            id,
            name: name.to_string(),
            passed,
            checks: self.checks,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn epsilons_main() -> Vec<BigRational> {
    vec![rat(1, 2), rat(1, 4), rat(1, 10), rat(1, 100)]
}

/// Criterion 1: Exact `phi_k` equals the brute-force tuple count for every abelian
/// group of order at most 64 and `k` in 0..=3.
pub fn oracle_equivalence() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let groups = abelian_groups_up_to(64);
    for g in &groups {
        for k in 0..=3u32 {
            let exact = phi_abelian(g, u64::from(k)).value;
            let counted = phi_by_counting(g, k, DEFAULT_TUPLE_CAP).expect("within cap");
            t.check(exact == counted, || {
                format!("{g} k={k}: {exact} vs {counted}")
            });
        }
    }
    let n = groups.len();
    t.finish(
        1,
        "oracle_equivalence",
        start,
        format!("{n} groups x k=0..3"),
    )
}

/// Criterion 2: Both sufficient bounds deliver `phi >= 1 - eps` on 500 random profiles.
pub fn bound_soundness() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = trial_rng(SEED_PROFILES, 0);
    for _ in 0..500 {
        let profile = random_profile(&mut rng);
        for eps in epsilons_main() {
            let target = BigRational::one() - &eps;
            let rk = rank_bound(u64::from(profile.rank()), &eps).expect("valid eps");
            let lk = len_bound(profile.len(), &eps).expect("valid eps");
            let at_rank = phi_profile(&profile, rk).value;
            let at_len = phi_profile(&profile, lk).value;
            t.check(at_rank >= target, || {
                format!("{profile} eps={eps} rank k={rk}")
            });
            t.check(at_len >= target, || {
                format!("{profile} eps={eps} len k={lk}")
            });
        }
    }
    t.finish(2, "bound_soundness", start, "500 profiles x 4 eps".into())
}

/// Criterion 3: At the reduced sample counts the witness `(Z/2)^n` fails the target.
pub fn tightness() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=20 {
        for eps in epsilons_main() {
            for mode in [TightnessMode::Len, TightnessMode::Rank] {
                let w = tightness_witness(mode, n, &eps).expect("valid input");
                t.check(w.claim_holds, || {
                    format!("{mode} n={n} eps={eps}: phi_{}={}", w.k, w.phi)
                });
            }
        }
    }
    t.finish(3, "tightness", start, "n=1..20 x 4 eps x 2 modes".into())
}

/// Criterion 4: `rank + 2` uniform elements generate with probability at least 1/2,
/// exactly on 200 random groups and by sampling on `(Z/2)^6` at `k = 8`.
pub fn rank_plus_two() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let half = rat(1, 2);
    for g in random_group_family() {
        let k = u64::from(g.rank()) + 2;
        let phi = phi_abelian(&g, k).value;
        t.check(phi >= half, || format!("{g}: phi_{k} = {phi}"));
    }
    let g = AbelianGroup::elementary(2, 6).expect("valid");
    let exact = phi_abelian(&g, 8).value;
    let mc = estimate_phi(&g, 8, 100_000, SEED_SPOT_CHECK).expect("trials > 0");
    let diff = (&mc.point_estimate - &exact).abs();
    t.check(diff <= rat(1, 100), || {
        format!("Monte Carlo {} vs exact {exact}", mc.point_estimate)
    });
    let summary = format!(
        "200 groups; (Z2)^6 k=8 estimate {:.4} vs exact {:.4}",
        ratio_f64(&mc.point_estimate),
        ratio_f64(&exact)
    );
    t.finish(4, "rank_plus_two", start, summary)
}

/// Criterion 5: Duality laws for every subgroup of every abelian group of order at most 36.
pub fn duality() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut subgroups = 0u64;
    for g in abelian_groups_up_to(36) {
        let ig = IndexedGroup::new(&g, 1_000).expect("small");
        let g_len = g.len();
        let g_rank = g.rank();
        let g_order = g.order();
        for mask in ig.all_subgroups() {
            subgroups += 1;
            let h = subgroup_from_mask(&g, &ig, &mask);
            let size = mask.iter().filter(|&&b| b).count();
            t.check(h.order() == &BigUint::from(size), || {
                format!("{g}: span order {} vs closure {size}", h.order())
            });
            let perp = h.orthogonal();
            let by_def = ig.orthogonal_by_definition(&mask);
            t.check(mask_of(&ig, &perp) == by_def, || {
                format!("{g}: H^perp of {h} disagrees with definition")
            });
            t.check(perp.orthogonal() == h, || {
                format!("{g}: perp(perp({h})) != H")
            });
            t.check(h.order() * perp.order() == g_order, || {
                format!("{g}: |H||H^perp| != |G| for {h}")
            });
            t.check(h.len() + perp.len() == g_len, || {
                format!("{g}: len additivity fails for {h}")
            });
            t.check(g_rank <= h.rank() + perp.rank(), || {
                format!("{g}: rank subadditivity fails for {h}")
            });
        }
    }
    t.finish(5, "duality", start, format!("{subgroups} subgroups"))
}

/// Criterion 6: Simulated recovery rate at the planned iteration count reaches
/// `1 - eps` up to the 99% half-width, on 50 random instances.
pub fn ahsp_end_to_end() -> CriterionOutcome {
    ahsp_end_to_end_with(50, 10_000)
}

pub fn ahsp_end_to_end_with(instances: u64, trials: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut worst_margin: Option<f64> = None;
    for i in 0..instances {
        let mut rng = trial_rng(SEED_INSTANCES, i);
        let inst = random_instance(&mut rng, 1 << 16);
        for (j, eps) in [rat(1, 2), rat(1, 4), rat(1, 10)].into_iter().enumerate() {
            let target = BigRational::one() - &eps;
            for strategy in [Strategy::Rank, Strategy::Len] {
                let plan = plan_for_instance(&inst, &eps, strategy).expect("valid plan");
                let exact = exact_success_probability(&inst, plan.k);
                t.check(exact >= target, || {
                    format!(
                        "{}: exact phi_{}(H^perp) = {exact} < {target}",
                        inst.group(),
                        plan.k
                    )
                });
                let seed = SEED_INSTANCES ^ (i << 8) ^ ((j as u64) << 4) ^ strategy as u64;
                let sim = simulate_plan(&inst, &plan, trials, seed).expect("trials > 0");
                let floor = &target - &sim.confidence_halfwidth;
                t.check(sim.point_estimate >= floor, || {
                    format!(
                        "{} H={} {strategy} eps={eps}: rate {} below {}",
                        inst.group(),
                        inst.hidden(),
                        sim.point_estimate,
                        floor
                    )
                });
                let margin = ratio_f64(&(&sim.point_estimate - &floor));
                worst_margin = Some(worst_margin.map_or(margin, |w: f64| w.min(margin)));
            }
        }
    }
    let summary = format!(
        "{instances} instances x 3 eps x 2 strategies, {trials} trials each; smallest margin {:.4}",
        worst_margin.unwrap_or(0.0)
    );
    t.finish(6, "ahsp_end_to_end", start, summary)
}

/// Criterion 7: `min(rank bound, len bound) <= order-based bound` on the family of criterion 4.
pub fn bound_sharpening() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in random_group_family() {
        for eps in epsilons_main() {
            let rk = rank_bound(u64::from(g.rank()), &eps).expect("valid");
            let lk = len_bound(g.len(), &eps).expect("valid");
            let pk = pak_bound(&g.order(), &eps).expect("valid");
            t.check(rk.min(lk) <= pk, || {
                format!("{g} eps={eps}: min({rk},{lk}) > {pk}")
            });
        }
    }
    t.finish(7, "bound_sharpening", start, "200 groups x 4 eps".into())
}

/// The 200 seeded random groups of order at most `2^20` shared by criteria 4 and 7.
pub fn random_group_family() -> Vec<AbelianGroup> {
    (0..200)
        .map(|i| random_group(&mut trial_rng(SEED_GROUPS, i), 1 << 20))
        .collect()
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        oracle_equivalence(),
        bound_soundness(),
        tightness(),
        rank_plus_two(),
        duality(),
        ahsp_end_to_end(),
        bound_sharpening(),
    ]
}

fn subgroup_from_mask(g: &AbelianGroup, ig: &IndexedGroup, mask: &[bool]) -> Subgroup {
    let gens: Vec<_> = (0..ig.order())
        .filter(|&i| mask[i])
        .map(|i| ig.element(i))
        .collect();
    g.span(&gens).expect("members of g")
}

fn mask_of(ig: &IndexedGroup, s: &Subgroup) -> Vec<bool> {
    (0..ig.order())
        .map(|i| s.contains(&ig.element(i)).expect("same group"))
        .collect()
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
