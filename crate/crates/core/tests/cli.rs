use std::path::Path;
use std::process::{Command, Output};

use nilgen::bounds::{BoundReport, TightnessJson};
use nilgen::cli::{AhspPayload, CommandResult, PhiPayload, RegevPayload, ReproPayload, Status};
use num_rational::BigRational;
use serde::de::DeserializeOwned;

fn nilgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn result(out: &Output) -> CommandResult {
    serde_json::from_slice(&out.stdout).expect("stdout is a CommandResult")
}

fn ok_payload<T: DeserializeOwned>(args: &[&str]) -> T {
    let out = nilgen(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = result(&out);
    assert_eq!(r.status, Status::Ok);
    serde_json::from_value(r.payload).expect("payload matches its schema")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn write_instance(dir: &Path, json: &str) -> String {
    let path = dir.join("instance.json");
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn phi_exact_brute_and_monte_carlo() {
    let p: PhiPayload = ok_payload(&["phi", "--divisors", "2,2", "--k", "2", "--exact"]);
    assert_eq!(p.exact.unwrap().value, rat(3, 8));

    let p: PhiPayload = ok_payload(&["phi", "--divisors", "12", "--k", "2", "--brute-force"]);
    let b = p.brute_force.unwrap();
    assert_eq!((b.count.to_string(), b.phi), ("96".to_string(), rat(2, 3)));

    let p: PhiPayload = ok_payload(&["phi", "--divisors", "", "--k", "0", "--exact"]);
    assert_eq!(p.exact.unwrap().value, rat(1, 1));

    let args = [
        "phi",
        "--divisors",
        "12",
        "--k",
        "2",
        "--monte-carlo",
        "--trials",
        "20000",
        "--seed",
        "9",
    ];
    let a: PhiPayload = ok_payload(&args);
    let b: PhiPayload = ok_payload(&args);
    assert_eq!(a, b);
    let mc = a.monte_carlo.unwrap();
    assert_eq!((mc.seed, mc.trials), (9, 20000));
    assert!(mc.covers(&rat(2, 3)));
}

#[test]
fn exit_codes() {
    let out = nilgen(&["phi", "--divisors", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(result(&out).status, Status::InvalidInput);
    assert!(!out.stderr.is_empty());

    let out = nilgen(&["phi", "--divisors", "64,64", "--k", "3", "--brute-force"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(result(&out).status, Status::ResourceLimit);

    let out = nilgen(&["bounds", "--divisors", "4", "--epsilon", "0.25"]);
    assert_eq!(out.status.code(), Some(2));

    let out = nilgen(&["regev", "--n-bits", "-3"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed flags are rejected by the parser with the same code
    let out = nilgen(&["phi", "--k", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_tightness_regev() {
    let r: BoundReport = ok_payload(&[
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
    let r: BoundReport = ok_payload(&["bounds", "--divisors", "12", "--epsilon", "1/2"]);
    assert_eq!(
        (r.rank_bound_k, r.len_bound_k, r.pak_bound_k),
        (3, 4, Some(7))
    );
    let r: BoundReport = ok_payload(&["bounds", "--profile", "2:3:3", "--epsilon", "1/2"]);
    assert_eq!((r.rank_bound_k, r.len_bound_k), (5, 4));

    let w: TightnessJson =
        ok_payload(&["tightness", "--mode", "len", "--n", "4", "--epsilon", "1/4"]);
    assert_eq!((w.phi, w.claim_holds), (rat(315, 1024), true));
    let w: TightnessJson = ok_payload(&[
        "tightness",
        "--mode",
        "len",
        "--n",
        "20",
        "--epsilon",
        "1/100",
    ]);
    assert!(w.claim_holds);

    let r: RegevPayload = ok_payload(&["regev", "--n-bits", "2048"]);
    assert_eq!((r.repetitions, r.previous_repetitions), (48, Some(50)));
    let r: RegevPayload = ok_payload(&["regev", "--rank", "10"]);
    assert_eq!(r.repetitions, 12);
}

#[test]
fn ahsp_from_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(
        dir.path(),
        r#"{"group": {"divisors": [2, 2]}, "hidden_subgroup_generators": [[1, 0]]}"#,
    );
    let args = [
        "ahsp",
        &path,
        "--epsilon",
        "1/2",
        "--strategy",
        "len",
        "--trials",
        "5000",
        "--seed",
        "3",
    ];
    let p: AhspPayload = ok_payload(&args);
    assert_eq!(p.plan.k, 2);
    assert_eq!(p.exact_success_probability, rat(3, 4));
    assert_eq!(p.orthogonal_subgroup.order.to_string(), "2");
    let floor = rat(1, 2) - p.simulation.confidence_halfwidth.clone();
    assert!(p.simulation.point_estimate >= floor);
    let again: AhspPayload = ok_payload(&args);
    assert_eq!(p, again);

    let p: AhspPayload = ok_payload(&[
        "ahsp",
        &path,
        "--epsilon",
        "1/2",
        "--strategy",
        "rank",
        "--trials",
        "100",
    ]);
    assert_eq!(p.plan.k, 4);

    let full = write_instance(
        dir.path(),
        r#"{"group": {"divisors": [2, 2]}, "hidden_subgroup_generators": [[1, 0], [0, 1]]}"#,
    );
    let p: AhspPayload = ok_payload(&["ahsp", &full, "--epsilon", "1/2", "--trials", "100"]);
    assert_eq!(p.simulation.successes, 100);

    let bad = write_instance(dir.path(), r#"{"group": {"divisors": [2]}}"#);
    assert_eq!(
        nilgen(&["ahsp", &bad, "--epsilon", "1/2"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.json");
    let out = nilgen(&[
        "tightness",
        "--mode",
        "rank",
        "--n",
        "1",
        "--epsilon",
        "1/2",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written: CommandResult =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(written.payload, result(&out).payload);
    let w: TightnessJson = serde_json::from_value(written.payload).unwrap();
    assert_eq!((w.k, w.phi), (0, rat(0, 1)));
}

#[test]
fn repro_subset() {
    let p: ReproPayload = ok_payload(&["repro", "--only", "3,7"]);
    assert_eq!(p.criteria.len(), 2);
    assert!(p.all_passed);
    assert_eq!(nilgen(&["repro", "--only", "9"]).status.code(), Some(2));
}
