//! Fixed inputs shared by the benchmarks.

use wpolab_core::harness::gen;
use wpolab_core::poset::FinPoset;
use wpolab_core::{CnfOrdinal, KOrdinal};

pub const SEED: u64 = 7;

/// `count` random ordinals below `ε₀` from the default generator shape.
pub fn ordinals(count: u64) -> Vec<CnfOrdinal> {
    (0..count)
        .map(|i| gen::ordinal(&mut gen::case_rng(SEED, i)))
        .collect()
}

/// `count` pairs of equipotent ordinals across the cardinal tower.
pub fn equipotent_pairs(count: u64) -> Vec<Vec<KOrdinal>> {
    (0..count)
        .map(|i| gen::equipotent_tuple(&mut gen::case_rng(SEED, i), 2))
        .collect()
}

/// `count` random posets on `n` vertices.
pub fn posets(n: usize, count: u64) -> Vec<FinPoset> {
    (0..count)
        .map(|i| gen::poset(&mut gen::case_rng(SEED, i), n))
        .collect()
}
