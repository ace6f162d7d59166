//! Seed splitting.
//!
//! Every run owns `run_seed = base_seed + run_index`. Independent streams are
//! derived from it by mixing in a tag, so adding draws to one stream never
//! shifts another:
//!
//! ```text
//! run_seed ─┬─ INIT            weight initialization
//!           ├─ STATE           initial network state
//!           ├─ DATA            training batches
//!           ├─ EVAL            evaluation batches
//!           ├─ RECALL          recall cues and noise
//!           └─ NEURON_BASE + k firing of neuron k
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

pub const INIT: u64 = 1;
pub const STATE: u64 = 2;
pub const DATA: u64 = 3;
pub const EVAL: u64 = 4;
pub const RECALL: u64 = 5;
pub const PATTERNS: u64 = 6;
pub const NEURON_BASE: u64 = 1 << 32;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(tag.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

pub fn stream(seed: u64, tag: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag))
}

pub fn run_seed(base_seed: u64, run_index: usize) -> u64 {
    base_seed.wrapping_add(run_index as u64)
}
