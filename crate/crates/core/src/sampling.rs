//! Deterministic per-check sampling keyed by `(seed, id, index)`.

use crate::kernel::{Real, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type SampleRng = ChaCha8Rng;

pub const SAMPLER_VERSION: &str = "sha256-chacha8-v1";

/// Stream for one sample; independent of thread count and scheduling.
pub fn rng_for(seed: u64, id: &str, index: usize) -> SampleRng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    h.update([0u8]);
    h.update((index as u64).to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

pub fn uniform(rng: &mut SampleRng, lo: Real, hi: Real) -> Real {
    rng.random_range(lo..hi)
}

/// Complex number with independent uniform real and imaginary parts.
pub fn complex(rng: &mut SampleRng, re: (Real, Real), im: (Real, Real)) -> C64 {
    let x = uniform(rng, re.0, re.1);
    let y = uniform(rng, im.0, im.1);
    C64::new(x, y)
}
