//! Deterministic, counter-derived random number streams.
//!
//! Every consumer of randomness gets its own ChaCha stream keyed by
//! `(master seed, domain, a, b)`. Streams are independent of each other and
//! of evaluation order, so slots and trials can run on any number of worker
//! threads and still reproduce bit-identical results. Adding grid points or
//! trials to a sweep never perturbs the streams of existing ones.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent sub-stream families. Keeping purposes separate means e.g.
/// toggling warden mobility never shifts the node placement sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Node positions for one slot.
    Nodes = 1,
    /// Warden positions (slot 0 is reused when wardens are static).
    Wardens = 2,
    /// Sender/receiver role assignment for one slot.
    Roles = 3,
    /// The source→destination permutation for one run.
    Flows = 4,
    /// Pilot slots used by transmit-power calibration.
    Calibration = 5,
    /// Per-(n, trial) seeds inside a sweep.
    Sweep = 6,
}

/// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Collapse `(master, domain, a, b)` into a single well-mixed word.
pub fn derive(master: u64, domain: Domain, a: u64, b: u64) -> u64 {
    let mut z = mix(master ^ 0x9e37_79b9_7f4a_7c15);
    z = mix(z ^ (domain as u64).wrapping_mul(0xd605_0b12_54cc_15d5));
    z = mix(z ^ a.wrapping_mul(0xa076_1d64_78bd_642f));
    mix(z ^ b.wrapping_mul(0xe703_7ed1_a0b4_28db))
}

/// A fresh ChaCha stream for `(master, domain, counter)`.
pub fn stream(master: u64, domain: Domain, counter: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    for (i, chunk) in seed.chunks_exact_mut(8).enumerate() {
        chunk.copy_from_slice(&derive(master, domain, counter, i as u64).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Derived master seed for one `(n, trial)` cell of a sweep.
pub fn trial_seed(master: u64, n: u64, trial: u64) -> u64 {
    derive(master, Domain::Sweep, n, trial)
}
