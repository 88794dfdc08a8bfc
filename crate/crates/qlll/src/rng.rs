//! Seeding contract for reproducible experiments.
//!
//! All sampling uses ChaCha8, a counter-based stream cipher generator seeded
//! from 64 bits. Trial `i` of an experiment with master seed `s` draws from a
//! generator seeded with `s XOR i`, so trials are mutually independent streams
//! that can be executed in any order, serially or in parallel, and always
//! reproduce the same results.

use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

/// The generator used everywhere randomness is needed.
pub type SeededRng = ChaCha8Rng;

/// Generator for a whole run.
pub fn master_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Derived seed for one trial: `master XOR trial_index`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    master ^ trial
}

/// Generator for one trial of a multi-trial experiment.
pub fn trial_rng(master: u64, trial: u64) -> SeededRng {
    SeededRng::seed_from_u64(trial_seed(master, trial))
}
