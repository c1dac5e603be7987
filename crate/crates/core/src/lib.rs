//! Generation probabilities of finite nilpotent groups.
//!
//! The crate computes `phi_k(G)`, the probability that `k` uniform
//! independent elements generate `G`, exactly as a rational; the two
//! sufficient sample counts `rank(G) + ceil(log2(2/eps))` and
//! `len(G) + ceil(log2(1/eps))` together with their tightness witnesses;
//! and a simulator for the classical half of the abelian hidden-subgroup
//! algorithm, which samples the orthogonal subgroup and recovers `H`.

// `len` is the number of prime factors of an order, not a container size.
#![allow(clippy::len_without_is_empty, clippy::needless_range_loop)]

pub mod ahsp;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod families;
pub mod group;
pub mod numbers;
pub mod probability;
pub mod repro;

pub use error::{Error, Result};
pub use group::{AbelianGroup, Element, NilpotentProfile, Subgroup};
