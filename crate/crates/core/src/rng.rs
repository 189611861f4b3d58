//! Seeded random streams.
//!
//! Every trial of an experiment draws from its own ChaCha8 stream: the key is
//! derived from the root seed and the 64-bit stream id is the trial index.
//! Streams are independent of scheduling, so results do not depend on how
//! trials are distributed over threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// RNG for trial `trial` of an experiment rooted at `root_seed`.
pub fn trial_rng(root_seed: u64, trial: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(trial);
    rng
}

/// Root seed for a named sub-experiment, so that sibling experiments sharing
/// a root seed do not reuse streams.
pub fn derive_seed(root_seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, mixed with the root seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ root_seed;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
