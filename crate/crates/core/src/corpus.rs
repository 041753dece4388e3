//! Seeded random integer lattices for property checks and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::LatticeBasis;

/// `count` full-rank integer bases, dimensions cycling through `dims`, entries
/// uniform in `[-bound, bound]`. Singular draws are redrawn.
pub fn random_full_rank(seed: u64, count: usize, dims: std::ops::RangeInclusive<usize>, bound: i64) -> Vec<LatticeBasis> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = dims.collect();
    (0..count)
        .map(|i| {
            let n = dims[i % dims.len()];
            loop {
                let rows: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
                    .collect();
                if let Ok(l) = LatticeBasis::from_integers(&rows) {
                    break l;
                }
            }
        })
        .collect()
}

/// Integer rows of a basis drawn like [`random_full_rank`] but with `m ≤ n` rows.
pub fn random_rows(rng: &mut impl Rng, m: usize, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..m).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
