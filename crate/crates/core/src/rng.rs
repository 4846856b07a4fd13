//! Deterministic seed derivation.
//!
//! Every random quantity is drawn from a ChaCha8 stream whose key comes
//! from mixing a tuple of integers, so results depend only on those
//! integers and never on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const PHASE_SAMPLE: u64 = 1;
pub(crate) const PHASE_DELETE: u64 = 2;
pub(crate) const PHASE_ADD: u64 = 3;
pub(crate) const PHASE_REWIRE: u64 = 4;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable, order-sensitive hash of a sequence of integers.
pub fn mix_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x6a09_e667_f3bc_c908, |acc, &p| {
        splitmix64(acc ^ splitmix64(p))
    })
}

/// Independent generator for `phase` of the computation keyed by `seed`.
pub fn stream(seed: u64, phase: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(phase);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn mixing_is_order_sensitive() {
        assert_ne!(mix_seed(&[1, 2]), mix_seed(&[2, 1]));
        assert_eq!(mix_seed(&[7, 8, 9]), mix_seed(&[7, 8, 9]));
    }

    #[test]
    fn phases_are_distinct_streams() {
        let a: u64 = stream(5, PHASE_DELETE).random();
        let b: u64 = stream(5, PHASE_ADD).random();
        assert_ne!(a, b);
        let again: u64 = stream(5, PHASE_DELETE).random();
        assert_eq!(a, again);
    }
}
