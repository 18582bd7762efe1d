//! Seeded randomness. Every random choice in the crate goes through here so
//! results depend only on the seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::Rational;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `lo..=hi`.
pub fn int_in(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo) as u64 + 1;
    lo + (rng.next_u64() % span) as i64
}

/// A random nonzero small rational, used for generic linear combinations.
pub fn nonzero_small(rng: &mut Rng, bound: i64) -> Rational {
    loop {
        let v = int_in(rng, -bound, bound);
        if v != 0 {
            return Rational::from_int(v);
        }
    }
}
