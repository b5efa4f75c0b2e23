//! Seeded random streams.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded with
//! [`ChaCha8Rng::seed_from_u64`]. Derived streams (per grid point, per run,
//! per permutation) are produced by mixing the parent seed with a counter
//! through [`derive_seed`], so results never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for the stream `(a, b)` under `parent`:
/// `mix(mix(mix(parent) ^ a) ^ b)`.
pub fn derive_seed(parent: u64, a: u64, b: u64) -> u64 {
    mix(mix(mix(parent) ^ a) ^ b)
}
