//! Exact probability that k uniform elements generate a finite abelian group.
//!
//! Usage: cargo run --example phi_exact -- [divisors] [max_k]

use nilgen::group::parse_divisor_list;
use nilgen::probability::phi_abelian;

fn main() -> nilgen::Result<()> {
    let mut args = std::env::args().skip(1);
    let group = parse_divisor_list(&args.next().unwrap_or_else(|| "2,4,3".into()))?;
    let max_k: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);

    println!(
        "G = {group}, |G| = {}, profile {}",
        group.order(),
        group.sylow_profile()
    );
    println!("rank {}, len {}", group.rank(), group.len());
    for k in 0..=max_k {
        let phi = phi_abelian(&group, k).value;
        println!("k = {k:2}  phi = {phi:<16} ~ {:.6}", ratio_f64(&phi));
    }
    Ok(())
}

fn ratio_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
