//! Seeded, splittable random number generation.
//!
//! Every stochastic routine in this crate takes an explicit `u64` seed and
//! drives a [`ChaCha8Rng`]. Parallel or sharded sampling derives one
//! sub-stream per shard with [`derive_seed`], so results are reproducible
//! and independent of shard execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer (Vigna). Good bit diffusion, not cryptographic.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of sub-stream `stream` from a root seed.
///
/// The derivation is fixed as
/// `mix64(root + (stream + 1) * 0x9E3779B97F4A7C15)` where `mix64` is the
/// SplitMix64 finalizer; it is part of the reproducibility contract and
/// will not change between releases.
pub fn derive_seed(root: u64, stream: u64) -> u64 {
    mix64(root.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// The generator used throughout the crate, seeded directly.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The generator of sub-stream `stream` under `root`.
pub fn substream(root: u64, stream: u64) -> ChaCha8Rng {
    seeded(derive_seed(root, stream))
}
