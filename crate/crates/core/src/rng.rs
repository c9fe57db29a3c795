//! Seedable, splittable random sampling.
//!
//! The generator is ChaCha8, which provides 2^64 independent streams per
//! seed. Child generators are derived either from an explicit stream index
//! (for partitioning one computation across workers) or from a key fold
//! (for giving every grid cell its own generator that does not depend on
//! the cell's position in the sweep). Both derivations are pure functions
//! of `(seed, key)`, so parallel and serial schedules see identical draws.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// SplitMix64 finalizer; used to whiten key material before seeding.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random number generator with derivable substreams.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
}

impl Rng {
    /// Generator for stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        Rng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Generator for an explicit `(seed, stream)` pair. Distinct streams of
    /// the same seed are independent ChaCha streams.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Rng { inner }
    }

    /// Folds `keys` into `seed` to derive a child seed. Used to key a
    /// generator by content (e.g. a grid cell's n and Δ) rather than by
    /// position, so reordering or subsetting a sweep does not change
    /// per-cell draws.
    pub fn fold_seed(seed: u64, keys: &[u64]) -> u64 {
        let mut state = mix(seed);
        for &k in keys {
            state = mix(state ^ mix(k));
        }
        state
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw on the open interval (0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        // 53 random bits, offset by half a step: never exactly 0 or 1.
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Draws from N(mean, sd²). `sd = 0` returns `mean` exactly without
/// consuming randomness.
pub fn sample_normal(mean: f64, sd: f64, rng: &mut Rng) -> Result<f64> {
    if !sd.is_finite() || sd < 0.0 {
        return Err(Error::Domain(format!(
            "sample_normal requires sd >= 0, got {sd}"
        )));
    }
    if sd == 0.0 {
        return Ok(mean);
    }
    // Box–Muller; the cosine branch only, so the generator stays stateless.
    let u1 = rng.uniform();
    let u2 = rng.uniform();
    let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
    Ok(mean + sd * z)
}

/// Draws from Gamma(shape, 1) by Marsaglia–Tsang squeeze/rejection,
/// boosting sub-unit shapes through Gamma(shape + 1).
pub fn sample_gamma(shape: f64, rng: &mut Rng) -> Result<f64> {
    if !shape.is_finite() || shape <= 0.0 {
        return Err(Error::Domain(format!(
            "sample_gamma requires shape > 0, got {shape}"
        )));
    }
    if shape < 1.0 {
        let boosted = sample_gamma(shape + 1.0, rng)?;
        return Ok(boosted * rng.uniform().powf(1.0 / shape));
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = sample_normal(0.0, 1.0, rng)?;
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.uniform();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return Ok(d * v);
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return Ok(d * v);
        }
    }
}

/// Draws a probability vector from Dirichlet(alphas) via normalized Gamma
/// draws. Requires at least two positive concentration parameters.
pub fn sample_dirichlet(alphas: &[f64], rng: &mut Rng) -> Result<Vec<f64>> {
    if alphas.len() < 2 {
        return Err(Error::Domain(format!(
            "sample_dirichlet requires at least 2 alphas, got {}",
            alphas.len()
        )));
    }
    let mut draws = Vec::with_capacity(alphas.len());
    let mut sum = 0.0;
    for &alpha in alphas {
        let g = sample_gamma(alpha, rng)?;
        sum += g;
        draws.push(g);
    }
    for g in &mut draws {
        *g /= sum;
    }
    Ok(draws)
}
