//! Command-line surface. Every subcommand produces a [`CommandResult`]
//! whose payload is one of the typed documents below; the binary prints it
//! as JSON on stdout.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ahsp::{
    exact_success_probability, plan_for_instance, regev_repetitions, regev_repetitions_for_bits,
    simulate_ahsp, HspInstance, HspInstanceJson, IterationPlan, SimulationResult, Strategy,
};
use crate::bounds::{
    bound_report, bound_report_for_group, tightness_witness, BoundReport, TightnessJson,
    TightnessMode,
};
use crate::error::{Error, Result};
use crate::group::{parse_divisor_list, AbelianGroup, GroupSpec, NilpotentProfile, SubgroupJson};
use crate::numbers::{big_string, parse_rational, rational_serde};
use crate::probability::{
    count_generating_tuples, estimate_phi, phi_abelian, MonteCarloEstimate, PhiValueJson,
    DEFAULT_TUPLE_CAP,
};
use crate::repro::{self, CriterionOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "nilgen",
    version,
    about = "Generation probabilities and sampling bounds for finite nilpotent groups"
)]
pub struct Cli {
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// phi_k(G): exact, brute-force count, or Monte Carlo estimate.
    Phi(PhiArgs),
    /// Sample-count bounds for success probability 1 - eps.
    Bounds(BoundsArgs),
    /// Tightness witness (Z/2)^n at the reduced sample count.
    Tightness(TightnessArgs),
    /// Plan and simulate the abelian hidden-subgroup post-processing.
    Ahsp(AhspArgs),
    /// Circuit repetitions for Regev's factoring algorithm.
    Regev(RegevArgs),
    /// Run the reproduction checks and print a pass/fail table.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Comma-separated cyclic orders, e.g. "12,2"; "" is the trivial group.
    #[arg(long, conflicts_with = "group")]
    pub divisors: Option<String>,
    /// JSON file of the form {"divisors": [12, 2]}.
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub k: u64,
    /// Exact rational value (the default when no mode is given).
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub monte_carlo: bool,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Count generating k-tuples by enumeration.
    #[arg(long)]
    pub brute_force: bool,
    #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Profile "p:r:l[,p:r:l...]" instead of a concrete group.
    #[arg(long, conflicts_with_all = ["divisors", "group"])]
    pub profile: Option<String>,
    /// Exact rational such as 1/10.
    #[arg(long)]
    pub epsilon: String,
    #[arg(long)]
    pub exact_min_k: bool,
}

#[derive(Debug, Args)]
pub struct TightnessArgs {
    #[arg(long)]
    pub mode: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub epsilon: String,
}

#[derive(Debug, Args)]
pub struct AhspArgs {
    /// HspInstance JSON file.
    pub instance: PathBuf,
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value = "len")]
    pub strategy: String,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Simulate with this many samples instead of the planned count.
    #[arg(long)]
    pub k: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RegevArgs {
    #[arg(long, conflicts_with = "rank", allow_negative_numbers = true)]
    pub n_bits: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rank: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// Run only these criteria (1-7).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvalidInput,
    ResourceLimit,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 2,
            Status::ResourceLimit => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorPayload {
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceJson {
    #[serde(with = "big_string")]
    pub count: BigUint,
    #[serde(with = "big_string")]
    pub tuples: BigUint,
    #[serde(with = "rational_serde")]
    pub phi: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiPayload {
    pub group: GroupSpec,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<PhiValueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BruteForceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloEstimate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhspPayload {
    pub instance: HspInstanceJson,
    pub hidden_subgroup: SubgroupJson,
    pub orthogonal_subgroup: SubgroupJson,
    /// Isomorphism type of H^perp.
    pub orthogonal_structure: GroupSpec,
    pub plan: IterationPlan,
    /// phi_k(H^perp) at the simulated k.
    #[serde(with = "rational_serde")]
    pub exact_success_probability: BigRational,
    pub simulation: SimulationResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegevPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bits: Option<u64>,
    pub rank: u64,
    pub repetitions: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub previous_repetitions: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproPayload {
    pub criteria: Vec<CriterionOutcome>,
    pub all_passed: bool,
}

fn load_group(args: &GroupArgs) -> Result<AbelianGroup> {
    match (&args.divisors, &args.group) {
        (Some(list), None) => parse_divisor_list(list),
        (None, Some(path)) => {
            let spec: GroupSpec = read_json(path)?;
            spec.to_group()
        }
        _ => Err(Error::invalid("give exactly one of --divisors or --group")),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(payload: &T) -> Value {
    serde_json::to_value(payload).expect("payload types serialize")
}

pub fn cmd_phi(args: &PhiArgs) -> Result<PhiPayload> {
    let group = load_group(&args.group)?;
    let exact_wanted = args.exact || !(args.monte_carlo || args.brute_force);
    let exact = exact_wanted.then(|| phi_abelian(&group, args.k).to_json());
    let brute_force = if args.brute_force {
        let k = u32::try_from(args.k).map_err(|_| Error::limit("k too large to enumerate"))?;
        let count = count_generating_tuples(&group, k, args.cap)?;
        let tuples = group.order().pow(k);
        Some(BruteForceJson {
            count: BigUint::from(count),
            phi: BigRational::new(BigInt::from(count), BigInt::from(tuples.clone())),
            tuples,
        })
    } else {
        None
    };
    let monte_carlo = if args.monte_carlo {
        Some(estimate_phi(&group, args.k, args.trials, args.seed)?)
    } else {
        None
    };
    Ok(PhiPayload {
        group: group.divisors_json(),
        k: args.k,
        exact,
        brute_force,
        monte_carlo,
    })
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<BoundReport> {
    let epsilon = parse_rational(&args.epsilon)?;
    match &args.profile {
        Some(p) => {
            let profile: NilpotentProfile = p.parse()?;
            bound_report(&profile, &epsilon, None, args.exact_min_k)
        }
        None => bound_report_for_group(&load_group(&args.group)?, &epsilon, args.exact_min_k),
    }
}

pub fn cmd_tightness(args: &TightnessArgs) -> Result<TightnessJson> {
    let mode: TightnessMode = args.mode.parse()?;
    let epsilon = parse_rational(&args.epsilon)?;
    Ok(tightness_witness(mode, args.n, &epsilon)?.to_json())
}

pub fn cmd_ahsp(args: &AhspArgs) -> Result<AhspPayload> {
    let json: HspInstanceJson = read_json(&args.instance)?;
    let instance = HspInstance::from_json(&json)?;
    let epsilon = parse_rational(&args.epsilon)?;
    let strategy: Strategy = args.strategy.parse()?;
    let plan = plan_for_instance(&instance, &epsilon, strategy)?;
    let k = args.k.unwrap_or(plan.k);
    let mut simulation = simulate_ahsp(&instance, k, args.trials, args.seed)?;
    simulation.plan = Some(plan.clone());
    let perp = instance.hidden().orthogonal();
    Ok(AhspPayload {
        instance: instance.to_json(),
        hidden_subgroup: instance.hidden().to_json(),
        orthogonal_subgroup: perp.to_json(),
        orthogonal_structure: perp.structure().divisors_json(),
        exact_success_probability: exact_success_probability(&instance, k),
        plan,
        simulation,
    })
}

fn positive(flag: &str, v: i64) -> Result<u64> {
    if v <= 0 {
        return Err(Error::invalid(format!(
            "--{flag} must be positive, got {v}"
        )));
    }
    Ok(v as u64)
}

pub fn cmd_regev(args: &RegevArgs) -> Result<RegevPayload> {
    match (args.n_bits, args.rank) {
        (Some(n), None) => {
            let n = positive("n-bits", n)?;
            let (reps, previous) = regev_repetitions_for_bits(n)?;
            Ok(RegevPayload {
                n_bits: Some(n),
                rank: reps - 2,
                repetitions: reps,
                previous_repetitions: Some(previous),
            })
        }
        (None, Some(d)) => {
            let d = positive("rank", d)?;
            Ok(RegevPayload {
                n_bits: None,
                rank: d,
                repetitions: regev_repetitions(d),
                previous_repetitions: None,
            })
        }
        _ => Err(Error::invalid("give exactly one of --n-bits or --rank")),
    }
}

pub fn cmd_repro(args: &ReproArgs) -> Result<ReproPayload> {
    let runners: [(u8, fn() -> CriterionOutcome); 7] = [
        (1, repro::oracle_equivalence),
        (2, repro::bound_soundness),
        (3, repro::tightness),
        (4, repro::rank_plus_two),
        (5, repro::duality),
        (6, repro::ahsp_end_to_end),
        (7, repro::bound_sharpening),
    ];
    if let Some(bad) = args.only.iter().find(|id| !(1..=7).contains(*id)) {
        return Err(Error::invalid(format!("no criterion {bad}")));
    }
    let criteria: Vec<CriterionOutcome> = runners
        .iter()
        .filter(|(id, _)| args.only.is_empty() || args.only.contains(id))
        .map(|(_, run)| {
            let outcome = run();
            eprintln!("{}", outcome.line());
            outcome
        })
        .collect();
    let all_passed = criteria.iter().all(|c| c.passed);
    Ok(ReproPayload {
        criteria,
        all_passed,
    })
}

pub fn execute(command: &Command) -> Result<Value> {
    Ok(match command {
        Command::Phi(a) => to_value(&cmd_phi(a)?),
        Command::Bounds(a) => to_value(&cmd_bounds(a)?),
        Command::Tightness(a) => to_value(&cmd_tightness(a)?),
        Command::Ahsp(a) => to_value(&cmd_ahsp(a)?),
        Command::Regev(a) => to_value(&cmd_regev(a)?),
        Command::Repro(a) => to_value(&cmd_repro(a)?),
    })
}

pub fn run(command: &Command) -> CommandResult {
    let start = Instant::now();
    let (status, payload) = match execute(command) {
        Ok(v) => (Status::Ok, v),
        Err(e) => {
            let status = match e {
                Error::InvalidInput(_) => Status::InvalidInput,
                Error::ResourceLimit(_) => Status::ResourceLimit,
            };
            (
                status,
                to_value(&ErrorPayload {
                    error: e.to_string(),
                }),
            )
        }
    };
    CommandResult {
        status,
        payload,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        let mut full = vec!["nilgen"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().command
    }

    fn payload<T: for<'de> Deserialize<'de>>(args: &[&str]) -> T {
        let r = run(&parse(args));
        assert_eq!(r.status, Status::Ok, "{}", r.payload);
        serde_json::from_value(r.payload).unwrap()
    }

    #[test]
    fn phi_modes() {
        let p: PhiPayload = payload(&["phi", "--divisors", "2,2", "--k", "2", "--exact"]);
        let v = p.exact.unwrap().value;
        assert_eq!(
            (v.numer().to_string(), v.denom().to_string()),
            ("3".into(), "8".into())
        );

        let p: PhiPayload = payload(&["phi", "--divisors", "12", "--k", "2", "--brute-force"]);
        let b = p.brute_force.unwrap();
        assert_eq!(b.count, BigUint::from(96u32));
        assert_eq!(b.tuples, BigUint::from(144u32));
        assert!(p.exact.is_none());

        let p: PhiPayload = payload(&["phi", "--divisors", "", "--k", "0", "--exact"]);
        assert_eq!(p.exact.unwrap().value, BigRational::from_integer(1.into()));
    }

    #[test]
    fn error_statuses() {
        let r = run(&parse(&["phi", "--divisors", "1", "--k", "1"]));
        assert_eq!(r.status, Status::InvalidInput);
        let r = run(&parse(&[
            "phi",
            "--divisors",
            "1000",
            "--k",
            "3",
            "--brute-force",
        ]));
        assert_eq!(r.status, Status::ResourceLimit);
        assert_eq!(r.status.exit_code(), 3);
        let r = run(&parse(&["bounds", "--divisors", "12", "--epsilon", "0.1"]));
        assert_eq!(r.status, Status::InvalidInput);
        let r = run(&parse(&["regev", "--rank", "0"]));
        assert_eq!(r.status, Status::InvalidInput);
        let r = run(&parse(&[
            "tightness",
            "--mode",
            "width",
            "--n",
            "2",
            "--epsilon",
            "1/2",
        ]));
        assert_eq!(r.status, Status::InvalidInput);
    }

    #[test]
    fn bounds_and_tightness() {
        let r: BoundReport = payload(&[
            "bounds",
            "--divisors",
            "2,2,2",
            "--epsilon",
            "1/10",
            "--exact-min-k",
        ]);
        assert_eq!(
            (r.rank_bound_k, r.len_bound_k, r.exact_min_k),
            (8, 7, Some(7))
        );
        let r: BoundReport = payload(&["bounds", "--divisors", "12", "--epsilon", "1/2"]);
        assert_eq!(
            (r.rank_bound_k, r.len_bound_k, r.pak_bound_k),
            (3, 4, Some(7))
        );
        let r: BoundReport = payload(&["bounds", "--profile", "2:3:3", "--epsilon", "1/2"]);
        assert_eq!((r.rank_bound_k, r.len_bound_k, r.pak_bound_k), (5, 4, None));

        let w: TightnessJson =
            payload(&["tightness", "--mode", "len", "--n", "4", "--epsilon", "1/4"]);
        assert_eq!(w.phi, BigRational::new(315.into(), 1024.into()));
        assert!(w.claim_holds);
        let w: TightnessJson = payload(&[
            "tightness",
            "--mode",
            "rank",
            "--n",
            "1",
            "--epsilon",
            "1/2",
        ]);
        assert_eq!(w.k, 0);
        assert!(w.claim_holds);
        let w: TightnessJson = payload(&[
            "tightness",
            "--mode",
            "len",
            "--n",
            "20",
            "--epsilon",
            "1/100",
        ]);
        assert!(w.claim_holds);
    }

    #[test]
    fn regev() {
        let r: RegevPayload = payload(&["regev", "--n-bits", "2048"]);
        assert_eq!((r.repetitions, r.previous_repetitions), (48, Some(50)));
        let r: RegevPayload = payload(&["regev", "--rank", "10"]);
        assert_eq!(r.repetitions, 12);
        let r: RegevPayload = payload(&["regev", "--n-bits", "1"]);
        assert_eq!(r.repetitions, 3);
    }
}
