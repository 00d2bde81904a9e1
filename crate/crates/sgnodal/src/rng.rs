//! Minimal deterministic RNG (splitmix64). The generators key every stream
//! off `(seed, trial)` so parallel or reordered execution cannot change what
//! any trial sees.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Stream for one trial: the pair is mixed so neighboring trials share
    /// no structure.
    pub fn for_trial(seed: u64, trial: u64) -> SplitMix64 {
        let mut s = SplitMix64::new(seed ^ 0x9e3779b97f4a7c15u64.wrapping_mul(trial.wrapping_add(1)));
        s.next_u64();
        s
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform in 0..n (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    pub fn sign(&mut self) -> crate::graph::Sign {
        if self.next_u64() & 1 == 0 {
            crate::graph::Sign::Plus
        } else {
            crate::graph::Sign::Minus
        }
    }
}
