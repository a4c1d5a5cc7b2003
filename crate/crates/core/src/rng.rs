//! Keyed random streams.
//!
//! Every random draw in a simulation is taken from a ChaCha stream whose key
//! is built from the global seed and a tuple of counters (trial index, stage,
//! tap index, ...). Streams are therefore independent of execution order and
//! safe to create from any worker thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stage tags used as the second key word.
pub mod domain {
    pub const CHANNEL: u64 = 0x4348_414e;
    pub const BITS: u64 = 0x4249_5453;
    pub const NOISE_DATA: u64 = 0x4e44_4154;
    pub const NOISE_SOUNDING: u64 = 0x4e53_4e44;
}

/// Returns the stream for `seed` keyed by up to three counter words.
pub fn keyed_stream(seed: u64, keys: [u64; 3]) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    for (chunk, word) in key[8..].chunks_exact_mut(8).zip(keys) {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Folds a seed and a counter into a single derived seed (splitmix64 finalizer).
pub fn derive_seed(seed: u64, counter: u64) -> u64 {
    let mut z = seed ^ counter.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
