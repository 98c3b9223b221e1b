//! Deterministic random instances.
//!
//! Seeded inputs ("random roots on the circle") must be byte-for-byte
//! reproducible across platforms and toolchain versions, so the generator is
//! pinned here rather than borrowed from a library whose stream may change:
//!
//! * the seed is whitened once with the SplitMix64 finalizer, mapping any
//!   `u64` (including 0) to a valid nonzero state;
//! * the stream is xorshift64* (shifts 12/25/27, multiplier
//!   `0x2545F4914F6CDD1D`);
//! * floats take the top 53 bits of each output, uniform in `[0, 1)`.

use num_complex::Complex64;

use std::f64::consts::PI;

/// SplitMix64 finalizer used to whiten seeds.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The pinned xorshift64* generator.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    /// Build a generator from any seed.
    pub fn new(seed: u64) -> XorShift64Star {
        let mut state = splitmix64(seed);
        if state == 0 {
            state = 0x9E37_79B9_7F4A_7C15;
        }
        XorShift64Star { state }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state ^= self.state >> 12;
        self.state ^= self.state << 25;
        self.state ^= self.state >> 27;
        self.state.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform angle in `[0, 2 pi)`.
    pub fn next_angle(&mut self) -> f64 {
        2.0 * PI * self.next_f64()
    }

    /// Uniform direction parameter in `[0, pi)`.
    pub fn next_theta(&mut self) -> f64 {
        PI * self.next_f64()
    }
}

/// `n` points on the unit circle with uniform random angles.
pub fn unit_circle_roots(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = XorShift64Star::new(seed);
    (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.next_angle()))
        .collect()
}
