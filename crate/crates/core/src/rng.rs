//! Reproducible random streams.
//!
//! Every random draw in an experiment comes from a ChaCha8 stream keyed by
//! the experiment seed and a condition label, with the trial index selecting
//! the ChaCha stream number. A trial therefore sees the same numbers no
//! matter which worker runs it or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Root seed of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stream for one trial of one condition. `condition` is any sequence
    /// of integers identifying the condition (family tag, s, ...).
    pub fn trial(&self, condition: &[u64], trial: u64) -> TrialRng {
        let mut state = self.seed;
        let mut key = [0u8; 32];
        let mut mix = splitmix64(&mut state);
        for &c in condition {
            state ^= c.wrapping_mul(0xD6E8_FEB8_6659_FD93);
            mix ^= splitmix64(&mut state);
        }
        for chunk in key.chunks_mut(8) {
            chunk.copy_from_slice(&(splitmix64(&mut state) ^ mix).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(trial);
        rng
    }
}

/// `k` distinct indices from `0..n` by partial Fisher-Yates, in draw order.
pub fn sample_distinct<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    assert!(k <= n, "cannot draw {k} distinct values from {n}");
    // sparse swap table keeps this O(k) in memory for large n
    let mut swapped = std::collections::HashMap::with_capacity(k);
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let j = rng.gen_range(i..n);
        let vj = *swapped.get(&j).unwrap_or(&j);
        let vi = *swapped.get(&i).unwrap_or(&i);
        swapped.insert(j, vi);
        out.push(vj);
    }
    out
}
