//! Repetition counts for lattice-based factoring: rank + 2 instead of rank + 4.

use nilgen::ahsp::regev_repetitions_for_bits;

fn main() -> nilgen::Result<()> {
    for bits in [512u64, 1024, 2048, 4096] {
        let (new, old) = regev_repetitions_for_bits(bits)?;
        println!("{bits:>5}-bit modulus: {new} repetitions (previously {old})");
    }
    Ok(())
}
