//! Fixed deterministic generator for reproducible randomized verification.
//!
//! The generator is SplitMix64 (Steele–Lea–Vigna), chosen because it is
//! fully specified in a few lines and trivially portable, so counterexample
//! inputs reproduce across implementations in any language:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! All derived draws are defined exactly in terms of `next_u64` below, with
//! plain modulo reduction; the tiny modulo bias is irrelevant because only
//! reproducibility matters here.

use crate::rational::Rat;
use crate::seed::Seed;
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..n` as `next_u64() % n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Integer in `[lo, hi]` inclusive, as `lo + below(hi - lo + 1)`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Nonzero rational `p/q`: draws `p` in `[-max, max]` until nonzero,
    /// then `q` in `[1, max]`.
    pub fn nonzero_rational(&mut self, max: i64) -> Rat {
        assert!(max >= 1);
        let p = loop {
            let p = self.int_in(-max, max);
            if p != 0 {
                break p;
            }
        };
        let q = self.int_in(1, max);
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    /// Positive rational `p/q` with `p, q` in `[1, max]`.
    pub fn positive_rational(&mut self, max: i64) -> Rat {
        assert!(max >= 1);
        let p = self.int_in(1, max);
        let q = self.int_in(1, max);
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    /// Random seed: rank drawn in `[2, max_rank]`, indices "1".."n", upper
    /// triangle filled with entries in `[-bound, bound]` (row by row), and,
    /// when `allow_frozen` is set, each index frozen with probability 1/4
    /// (one draw per index, frozen iff `below(4) == 0`) — except that at
    /// least one index always stays mutable.
    pub fn random_seed(&mut self, max_rank: usize, bound: i64, allow_frozen: bool) -> Seed {
        let n = 2 + self.below((max_rank - 1) as u64) as usize;
        let mut eps = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let e = self.int_in(-bound, bound);
                eps[i][j] = e;
                eps[j][i] = -e;
            }
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut frozen: Vec<String> = Vec::new();
        if allow_frozen {
            for l in &labels {
                if self.below(4) == 0 {
                    frozen.push(l.clone());
                }
            }
            if frozen.len() == n {
                frozen.pop();
            }
        }
        Seed::new(labels, frozen, eps).expect("constructed skew-symmetric")
    }
}
