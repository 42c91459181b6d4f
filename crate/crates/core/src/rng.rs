//! Deterministic pseudo-random numbers (splitmix64).
//!
//! Point sampling and cyclic-vector retries must reproduce bit-for-bit from
//! a seed across platforms and library versions, so the generator is pinned
//! here instead of pulling in an external crate.

use crate::arith::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed ^ 0x9e37_79b9_7f4a_7c15,
        }
    }

    /// Derives an independent stream for a named subtask.
    pub fn derive(seed: u64, tag: &str, index: u64) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in tag.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        h ^= index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        Rng::new(seed.wrapping_mul(0x2545_f491_4f6c_dd1d) ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // rejection sampling to avoid modulo bias
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Random rational of height at most `h`: numerator in [-h, h],
    /// denominator in [1, h].
    pub fn rational(&mut self, h: u64) -> Rational {
        debug_assert!(h >= 1);
        let numer = self.below(2 * h + 1) as i64 - h as i64;
        let denom = 1 + self.below(h) as i64;
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Random nonzero rational of height at most `h`.
    pub fn nonzero_rational(&mut self, h: u64) -> Rational {
        loop {
            let r = self.rational(h);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }
}
