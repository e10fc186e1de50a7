//! Shared inputs for the benchmark suite.

use gbs_core::{GbsSet, Gpm};

pub fn standard_set(d: u32, pairs: &[(u32, u32)]) -> GbsSet {
    GbsSet::canonicalize(pairs.iter().map(|&(m, n)| Gpm::new(d, m, n)))
        .expect("benchmark sets are well formed")
}

/// The one-way LOCC indistinguishable 4-set, the hardest witness-search
/// input at d = 6.
pub fn indistinguishable_four_set() -> GbsSet {
    standard_set(6, &[(0, 0), (0, 2), (2, 0), (2, 2)])
}

/// A 4-set whose orbit is mid-sized, a representative classification load.
pub fn four_set_seed() -> GbsSet {
    standard_set(6, &[(0, 0), (0, 1), (1, 0), (1, 1)])
}
