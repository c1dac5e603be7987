//! Seeded uniform sampling.
//!
//! Each coordinate is drawn by reducing a uniform integer that is 64 bits
//! wider than the modulus, so the distance from uniform is below `2^-64`
//! per draw and no rejection loop is needed.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AbelianGroup, Element, Subgroup};

/// Uniform integer in `[0, m)`; `m` must be positive.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, m: &BigUint) -> BigUint {
    if let Some(small) = m.to_u64() {
        let wide = (u128::from(rng.next_u64()) << 64) | u128::from(rng.next_u64());
        return BigUint::from(wide % u128::from(small));
    }
    let bytes = (m.bits() as usize + 64).div_ceil(8);
    let mut buf = vec![0u8; bytes];
    rng.fill_bytes(&mut buf);
    BigUint::from_bytes_le(&buf) % m
}

/// Generator for trial `index` under master `seed`: ChaCha8 keyed by the
/// seed (via `seed_from_u64`) with the trial index as its stream number.
/// Trials are therefore independent of evaluation order.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

impl AbelianGroup {
    pub fn sample_uniform<R: RngCore + ?Sized>(&self, rng: &mut R) -> Element {
        Element::from_reduced(self.moduli().map(|m| uniform_below(rng, m)).collect())
    }
}

impl Subgroup {
    /// Uniform element of the subgroup, drawn via its triangular coordinate box.
    pub fn sample_uniform<R: RngCore + ?Sized>(&self, rng: &mut R) -> Element {
        let coords: Vec<BigUint> = self
            .box_sides()
            .iter()
            .map(|side| uniform_below(rng, side))
            .collect();
        self.element_from_box(&coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn trivial_group_sample_is_empty() {
        let mut rng = trial_rng(1, 0);
        let e = AbelianGroup::trivial().sample_uniform(&mut rng);
        assert!(e.coords().is_empty());
    }

    #[test]
    fn z2_frequency_is_near_half() {
        let g = AbelianGroup::from_u64s(&[2]).unwrap();
        let mut rng = trial_rng(7, 0);
        let ones = (0..20_000)
            .filter(|_| !g.sample_uniform(&mut rng).is_zero())
            .count();
        assert!((ones as f64 / 20_000.0 - 0.5).abs() < 0.02, "{ones}");
    }

    #[test]
    fn chi_square_on_z4_z3() {
        let g = AbelianGroup::from_u64s(&[4, 3]).unwrap();
        let mut rng = trial_rng(2024, 0);
        let mut counts: HashMap<Element, u64> = HashMap::new();
        for _ in 0..12_000 {
            *counts.entry(g.sample_uniform(&mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 12);
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0)
            .sum();
        // 11 degrees of freedom, upper 0.1% point
        assert!(chi2 < 31.264, "chi-square {chi2}");
    }

    #[test]
    fn same_seed_same_stream() {
        let g = AbelianGroup::from_u64s(&[1 << 40, 9, 125]).unwrap();
        let a: Vec<Element> = {
            let mut r = trial_rng(99, 3);
            (0..50).map(|_| g.sample_uniform(&mut r)).collect()
        };
        let b: Vec<Element> = {
            let mut r = trial_rng(99, 3);
            (0..50).map(|_| g.sample_uniform(&mut r)).collect()
        };
        assert_eq!(a, b);
        let mut r = trial_rng(99, 4);
        assert_ne!(
            a[0..5],
            (0..5).map(|_| g.sample_uniform(&mut r)).collect::<Vec<_>>()[..]
        );
    }

    #[test]
    fn big_modulus_draws_are_reduced() {
        let m: BigUint = "340282366920938463463374607431768211507".parse().unwrap();
        let mut rng = trial_rng(5, 0);
        for _ in 0..100 {
            assert!(uniform_below(&mut rng, &m) < m);
        }
    }
}
