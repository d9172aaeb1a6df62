//! Deterministic linear congruential generator shared by BRIEF pattern
//! generation and RANSAC sampling.

const MODULUS_MASK: u32 = (1 << 31) - 1;

/// `s <- (1103515245 * s + 12345) mod 2^31`
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u32,
}

impl Lcg {
    pub const fn new(seed: u64) -> Self {
        Self {
            state: (seed & MODULUS_MASK as u64) as u32,
        }
    }

    /// Advances the state and returns it, a value in `0..2^31`.
    pub const fn next_u31(&mut self) -> u32 {
        self.state = 1_103_515_245u32.wrapping_mul(self.state).wrapping_add(12_345) & MODULUS_MASK;
        self.state
    }

    /// Uniform index in `0..n` taken from the high bits of the next state.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u31() as u64 * n as u64) >> 31) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_states_from_seed_42() {
        let mut lcg = Lcg::new(42);
        let mut s = 42u64;
        for _ in 0..100 {
            s = (1103515245u64 * s + 12345) % (1 << 31);
            assert_eq!(lcg.next_u31() as u64, s);
        }
    }

    #[test]
    fn below_is_in_range() {
        let mut lcg = Lcg::new(7);
        let mut seen = [false; 10];
        for _ in 0..1000 {
            let i = lcg.below(10);
            seen[i] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
