//! Seeded randomness shared by every randomized routine.
//!
//! All randomness flows from a 64-bit master seed. Independent streams (one
//! per trial, per worker, ...) are obtained with [`derive_seed`], a
//! splitmix64 step over `master ^ stream-index`, so a sweep can be
//! parallelized without changing its output.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::setfun::Subset;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `stream`-th independent stream under `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream))
}

/// Uniformly random subset of exactly `size` elements.
pub fn random_subset_of_size(order: usize, size: usize, rng: &mut Rng) -> Subset {
    let size = size.min(order);
    let mut s = Subset::empty(order);
    for i in index::sample(rng, order, size).iter() {
        s.insert(i);
    }
    s
}

/// Uniformly random subset with `round(density * order)` elements.
pub fn random_subset(order: usize, density: f64, rng: &mut Rng) -> Subset {
    let size = (density.clamp(0.0, 1.0) * order as f64).round() as usize;
    random_subset_of_size(order, size, rng)
}

/// Uniform draw from `[lo, hi]`.
pub fn uniform(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    rand::Rng::gen_range(rng, lo..=hi)
}

/// Uniform integer from `[lo, hi]`.
pub fn uniform_int(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    rand::Rng::gen_range(rng, lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let a: Vec<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        let b: Vec<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 100);
    }

    #[test]
    fn random_subset_has_requested_size() {
        let mut rng = seeded(1);
        let s = random_subset(168, 0.5, &mut rng);
        assert_eq!(s.len(), 84);
        let t = random_subset(10, 1.0, &mut rng);
        assert_eq!(t.len(), 10);
    }
}
