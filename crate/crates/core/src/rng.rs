//! Named-stream random number generation.
//!
//! All randomness in the crate flows from a single `u64` seed. Independent
//! consumers derive their own stream by name, so a subcommand draws the same
//! values no matter what ran before it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Derive a deterministic RNG for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a64(label.as_bytes()));
    rng
}

/// Derive a deterministic RNG for `(seed, label, index)`, e.g. one stream per
/// scene or per training run.
pub fn stream_indexed(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key = fnv1a64(label.as_bytes()) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    rng.set_stream(key);
    rng
}
