//! Cross-checks the closed-form probability against exhaustive tuple counting.

use nilgen::families::abelian_groups_of_order;
use nilgen::probability::{count_generating_tuples, phi_abelian, DEFAULT_TUPLE_CAP};

fn main() -> nilgen::Result<()> {
    for n in [8u64, 12, 16, 18] {
        for group in abelian_groups_of_order(n) {
            for k in 1..=3u32 {
                let count = count_generating_tuples(&group, k, DEFAULT_TUPLE_CAP)?;
                let total = n.pow(k);
                let exact = phi_abelian(&group, u64::from(k)).value;
                let agree = exact == num_rational::BigRational::new(count.into(), total.into());
                println!(
                    "{group:<16} k={k}  {count:>5}/{total:<5} exact {exact:<8} {}",
                    if agree { "ok" } else { "MISMATCH" }
                );
            }
        }
    }
    Ok(())
}
