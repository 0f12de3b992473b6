//! Seeded, platform-independent random streams.
//!
//! The generator is counter-based: the `i`-th 64-bit output (i = 0, 1, ...)
//! of the stream keyed by `key` is
//!
//! ```text
//! z = key + (i + 1) · 0x9E3779B97F4A7C15          (wrapping)
//! z = (z ^ (z >> 30)) · 0xBF58476D1CE4E5B9          (wrapping)
//! z = (z ^ (z >> 27)) · 0x94D049BB133111EB          (wrapping)
//! out = z ^ (z >> 31)
//! ```
//!
//! i.e. the SplitMix64 output function applied to a Weyl sequence. Uniforms
//! on `[0, 1)` take the top 53 bits: `(out >> 11) · 2^-53`.
//!
//! Gaussian variates use the Marsaglia polar method: draw `u = 2·U₁ − 1`,
//! `v = 2·U₂ − 1` until `0 < s = u² + v² < 1`, then return `u·√(−2 ln s / s)`
//! followed (on the next call) by `v·√(−2 ln s / s)`.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Key salt separating the codeword-selection stream from the noise stream
/// of the same trial seed.
pub const CODEWORD_STREAM_SALT: u64 = 0xC0DE_C0DE_C0DE_C0DE;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        Self { key, counter: 0 }
    }

    /// Output at an arbitrary position without advancing.
    pub fn at(key: u64, index: u64) -> u64 {
        mix(key.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)))
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = Self::at(self.key, self.counter);
        self.counter += 1;
        out
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_bit(&mut self) -> u8 {
        (self.next_u64() >> 63) as u8
    }
}

/// Standard normal variates by the polar method.
#[derive(Clone, Debug)]
pub struct GaussianSource {
    rng: CounterRng,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: CounterRng::new(seed),
            spare: None,
        }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(v) = self.spare.take() {
            return v;
        }
        loop {
            let u = 2.0 * self.rng.next_f64() - 1.0;
            let v = 2.0 * self.rng.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * factor);
                return u * factor;
            }
        }
    }
}
