//! Reproducible parallel randomness.
//!
//! Every trial owns a stream addressed by (master seed, trial index); results
//! are therefore bit-identical no matter how trials are scheduled across
//! workers. ChaCha is counter-based, so streams are cheap to construct and
//! statistically independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// RNG stream for one trial of a campaign.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Derives an independent master seed for a sub-campaign (one splitmix64
/// round), so that phases of one run never share streams.
pub fn derive_seed(master_seed: u64, tag: u64) -> u64 {
    let mut z = master_seed
        .wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
