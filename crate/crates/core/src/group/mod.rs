//! Finite abelian groups in elementary-divisor form, their elements and
//! subgroups, Sylow invariants and uniform sampling.

mod abelian;
pub mod brute;
mod element;
mod lattice;
mod profile;
mod sampling;
mod subgroup;

pub use abelian::{parse_divisor_list, AbelianGroup, GroupSpec, PrimePowerFactor};
pub use element::{Element, ElementJson};
pub use profile::{direct_sum, NilpotentProfile, SylowEntry};
pub use sampling::{trial_rng, uniform_below};
pub use subgroup::{Subgroup, SubgroupJson};
