//! Elementary 2-groups showing the length bound cannot be lowered by two.

use nilgen::bounds::{tightness_witness, TightnessMode};
use nilgen::numbers::parse_rational;

fn main() -> nilgen::Result<()> {
    let eps = parse_rational(&std::env::args().nth(1).unwrap_or_else(|| "1/4".into()))?;
    for mode in [TightnessMode::Len, TightnessMode::Rank] {
        println!("mode {mode}, epsilon {eps}");
        for n in 1..=12 {
            let w = tightness_witness(mode, n, &eps)?;
            println!(
                "  (Z2)^{n:<2} k = {:<2} phi = {:<24} below 1-eps: {}",
                w.k, w.phi, w.claim_holds
            );
        }
    }
    Ok(())
}
