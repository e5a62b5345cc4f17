use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::Rational;

const DENOM: i64 = 1024;

/// FNV-1a over `tag` followed by the little-endian seed bytes.
pub(crate) fn fnv1a(tag: &[u8], seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.iter().chain(seed.to_le_bytes().iter()) {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub(crate) fn rng_for(tag: &[u8], seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(fnv1a(tag, seed))
}

/// A rational strictly between `lo` and `hi` on a grid of step `(hi-lo)/1024`.
pub(crate) fn rational_between(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let n: i64 = rng.gen_range(1..DENOM);
    lo + (hi - lo) * Rational::new(BigInt::from(n), BigInt::from(DENOM))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn deterministic_and_in_range() {
        assert_eq!(fnv1a(b"", 0), fnv1a(b"", 0));
        assert_ne!(fnv1a(b"a", 0), fnv1a(b"a", 1));
        let (lo, hi) = (rat(1, 5), rat(2, 5));
        let mut a = rng_for(b"x", 7);
        let mut b = rng_for(b"x", 7);
        for _ in 0..50 {
            let r = rational_between(&mut a, &lo, &hi);
            assert_eq!(r, rational_between(&mut b, &lo, &hi));
            assert!(r > lo && r < hi);
        }
    }
}
