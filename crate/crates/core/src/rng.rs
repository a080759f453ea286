//! Small deterministic RNG for randomized test batteries and `selftest`.
//!
//! SplitMix64. Not cryptographic; chosen so that every randomized check in
//! the crate and in the CLI is reproducible from a seed.

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform in `lo..hi` (hi > lo).
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo)
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// A random braid letter for `strands` strands, or None when the group
    /// is trivial.
    pub fn letter(&mut self, strands: usize) -> Option<i32> {
        if strands < 2 {
            return None;
        }
        let k = self.range(1, strands) as i32;
        Some(if self.bool() { k } else { -k })
    }
}
