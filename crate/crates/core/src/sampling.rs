//! Seeded random inputs for the verification suites.
//!
//! The generator is a plain 64-bit LCG, `s <- s * 6364136223846793005 +
//! 1442695040888963407 (mod 2^64)`, so other implementations can reproduce
//! a run from its seed. Draws use the high 32 bits of the new state.

use crate::arrangements::{wall_check, StabilityClass, WeightVector};
use crate::exactmath::{rat, Rational};

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        self.state
    }

    /// Uniform in `0..bound` for `1 <= bound <= 2^32` (multiply-shift on the
    /// high half).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!((1..=1 << 32).contains(&bound));
        ((self.next_u64() >> 32) * bound) >> 32
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Largest denominator drawn for a random weight.
pub const MAX_DENOMINATOR: i64 = 64;

/// One weight `p/q` with `2 <= q <= 64` and `1 <= p < q`.
pub fn random_weight(rng: &mut Lcg) -> Rational {
    let q = rng.range(2, MAX_DENOMINATOR);
    let p = rng.range(1, q - 1);
    rat(p, q)
}

/// Draws weight vectors with `m` uniform in `m_range` until one is log Fano
/// and off every wall.
pub fn random_weights(rng: &mut Lcg, n: usize, m_lo: usize, m_hi: usize) -> WeightVector {
    loop {
        let m = rng.range(m_lo as i64, m_hi as i64) as usize;
        let d: Vec<Rational> = (0..m).map(|_| random_weight(rng)).collect();
        let Ok(w) = WeightVector::new(n, d) else {
            continue;
        };
        if w.stability_class() != StabilityClass::LogFano {
            continue;
        }
        if matches!(wall_check(&w), Ok(walls) if walls.is_empty()) {
            return w;
        }
    }
}

/// A factor `t = p/q` in `(0, 1)` with `q <= 8`; scaling by it keeps weights
/// in range, log Fano, and generic.
pub fn random_scale(rng: &mut Lcg) -> Rational {
    let q = rng.range(2, 8);
    let p = rng.range(1, q - 1);
    rat(p, q)
}

/// Fisher-Yates shuffle of `0..m`.
pub fn random_permutation(rng: &mut Lcg, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}
