//! Random-number contract.
//!
//! Every stream is a ChaCha20 generator seeded with `seed_from_u64(seed)` and
//! switched to a purpose-specific stream id. Block `b` of a schedule samples
//! from stream `b`, so blocks can be drawn in parallel without changing the
//! output. Uniform variates take the top 53 bits of `next_u64`.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier written into stream headers.
pub const RNG_ALGORITHM: &str = "chacha20/rand_chacha-0.3/seed_from_u64/stream-per-block";

pub const DELAY_STREAM: u64 = 1 << 62;
pub const BACKGROUND_STREAM: u64 = (1 << 62) | 1;

pub type StreamRng = ChaCha20Rng;

pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on `[0, 1)`.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer on `[0, n)`.
pub fn below(rng: &mut impl RngCore, n: usize) -> usize {
    ((uniform(rng) * n as f64) as usize).min(n - 1)
}
