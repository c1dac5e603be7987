//! Seeded Monte Carlo estimate of the generation probability with a 99% interval.
//!
//! Usage: cargo run --release --example monte_carlo -- [divisors] [k] [trials] [seed]

use nilgen::group::parse_divisor_list;
use nilgen::probability::{estimate_phi, phi_abelian};
use num_traits::ToPrimitive;

fn main() -> nilgen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let group = parse_divisor_list(&arg(0, "2,2,2,2,2,2"))?;
    let k: u64 = arg(1, "8").parse().expect("k");
    let trials: u64 = arg(2, "100000").parse().expect("trials");
    let seed: u64 = arg(3, "0").parse().expect("seed");

    let est = estimate_phi(&group, k, trials, seed)?;
    let exact = phi_abelian(&group, k).value;
    println!("G = {group}, k = {k}, {trials} trials, seed {seed}");
    println!("estimate  {} / {}", est.successes, est.trials);
    println!(
        "rate      {:.5} +/- {:.5}",
        est.point_estimate.to_f64().unwrap_or(f64::NAN),
        est.confidence_halfwidth.to_f64().unwrap_or(f64::NAN)
    );
    println!(
        "exact     {exact} ~ {:.5}",
        exact.to_f64().unwrap_or(f64::NAN)
    );
    println!("covered   {}", est.covers(&exact));
    Ok(())
}
