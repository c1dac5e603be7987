//! Plans and simulates hidden subgroup recovery from uniform orthogonal samples.
//!
//! Usage: cargo run --release --example ahsp_simulation -- [instance.json] [epsilon] [trials]

use nilgen::ahsp::{
    exact_success_probability, plan_for_instance, simulate_plan, HspInstance, Strategy,
};
use nilgen::numbers::parse_rational;
use nilgen::{AbelianGroup, Element};
use num_traits::ToPrimitive;

fn main() -> nilgen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let instance = match args.first() {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| nilgen::Error::InvalidInput(format!("{path}: {e}")))?;
            let json = serde_json::from_str(&text)
                .map_err(|e| nilgen::Error::InvalidInput(format!("{path}: {e}")))?;
            HspInstance::from_json(&json)?
        }
        None => {
            let g = AbelianGroup::from_u64s(&[2, 4, 8, 9])?;
            let gens = [
                Element::from_i64s(&g, &[1, 2, 0, 3])?,
                Element::from_i64s(&g, &[0, 0, 4, 0])?,
            ];
            HspInstance::new(g, &gens)?
        }
    };
    let eps = parse_rational(args.get(1).map_or("1/10", String::as_str))?;
    let trials: u64 = args
        .get(2)
        .map_or(Ok(10_000), |s| s.parse())
        .expect("trials");

    println!(
        "G = {}, |H| = {}, H-perp = {}",
        instance.group(),
        instance.hidden().order(),
        instance.hidden().orthogonal().structure()
    );
    for strategy in [Strategy::Rank, Strategy::Len, Strategy::LenUnknownH] {
        let plan = plan_for_instance(&instance, &eps, strategy)?;
        let sim = simulate_plan(&instance, &plan, trials, 7)?;
        let exact = exact_success_probability(&instance, plan.k);
        println!(
            "{strategy:?}: k = {:<3} exact {:.5}  observed {}/{} (+/- {:.5})",
            plan.k,
            exact.to_f64().unwrap_or(f64::NAN),
            sim.successes,
            sim.trials,
            sim.confidence_halfwidth.to_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
