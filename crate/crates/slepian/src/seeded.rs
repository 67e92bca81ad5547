//! Seeded random streams.
//!
//! Every random quantity in this crate flows through a ChaCha8 generator
//! seeded with an explicit `u64`, so outputs are bit-reproducible across
//! runs and platforms. Uniform doubles take the top 53 bits of one
//! generator word (`(u >> 11) · 2⁻⁵³`, values in `[0,1)`), and normals come
//! from the Box-Muller transform of two such uniforms.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on `[0, 1)` with 53-bit resolution.
pub(crate) fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal draw by Box-Muller; consumes two generator words.
pub(crate) fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Shift the first uniform into (0, 1] so the log is finite.
    let u1 = 1.0 - uniform01(rng);
    let u2 = uniform01(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// SplitMix64 finalizer: expands an index into a well-mixed word. Used to
/// derive independent per-trial seeds from a base seed.
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}
