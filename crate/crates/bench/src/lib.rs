//! Fixtures shared by the criterion benches.

use parkgame_core::{sample_parking_function, PreferenceProfile};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` members of PF_n drawn from a stream fixed by `(seed, n)`.
pub fn fixtures(seed: u64, n: usize, count: usize) -> Vec<PreferenceProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..count)
        .map(|_| sample_parking_function(&mut rng, n))
        .collect()
}
