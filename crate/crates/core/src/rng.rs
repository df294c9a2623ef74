//! Seeded, platform-independent random streams.
//!
//! All randomness in the library flows from a single 64-bit master seed.
//! Independent purposes (train sampling, test sampling, ...) get their own
//! substream derived from the master seed and a fixed textual label, so that
//! e.g. enlarging the training split does not perturb the test split.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, which is stable
//! across platforms and `rand_chacha` releases.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a 64-bit hash of a label string.
fn fnv1a64(label: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Deterministic substream for `label`, derived from `master_seed`.
///
/// Distinct labels yield statistically independent streams; the same
/// `(master_seed, label)` pair always yields the same stream.
pub fn substream(master_seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master_seed ^ fnv1a64(label))
}
