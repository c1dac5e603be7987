//! Iteration bounds for a target failure probability, from a group or a profile.
//!
//! Usage: cargo run --example bounds_report -- [divisors|p:r:l,...] [epsilon]

use nilgen::bounds::{bound_report, bound_report_for_group};
use nilgen::group::parse_divisor_list;
use nilgen::numbers::parse_rational;
use nilgen::NilpotentProfile;

fn main() -> nilgen::Result<()> {
    let mut args = std::env::args().skip(1);
    let target = args.next().unwrap_or_else(|| "2,2,2,4,3".into());
    let eps = parse_rational(&args.next().unwrap_or_else(|| "1/100".into()))?;

    let report = if target.contains(':') {
        bound_report(&target.parse::<NilpotentProfile>()?, &eps, None, true)?
    } else {
        bound_report_for_group(&parse_divisor_list(&target)?, &eps, true)?
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    Ok(())
}
