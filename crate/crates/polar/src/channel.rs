//! BPSK modulation, the AWGN channel and per-frame deterministic RNG
//! streams.
//!
//! Every simulated frame draws from its own ChaCha stream keyed by
//! `(master seed, frame index)`, so results are a pure function of the seed
//! and the frame set, independent of worker count or scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Eb/N0 operating point together with the code rate it is normalized by.
///
/// CRC bits count as information here (they live inside K), mirroring the
/// convention that all compared schemes share the same noise variance at a
/// given Eb/N0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64) -> Self {
        assert!(rate > 0.0 && rate <= 1.0, "rate must be in (0, 1]");
        ChannelConfig { ebn0_db, rate }
    }

    /// Noise variance σ² = 1 / (2 R 10^(Eb/N0 / 10)).
    pub fn noise_variance(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// Deterministic family of per-frame RNG streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
}

impl RngStream {
    pub fn new(master_seed: u64) -> Self {
        RngStream { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// The RNG for one frame; disjoint frames give independent streams.
    pub fn frame(&self, frame_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(frame_index);
        rng
    }
}

/// BPSK mapping: bit 0 → +1.0, bit 1 → −1.0.
pub fn modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter()
        .map(|&b| if b == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// Adds white Gaussian noise of the configured variance.
pub fn transmit<R: Rng>(symbols: &[f64], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let sigma = cfg.noise_variance().sqrt();
    symbols
        .iter()
        .map(|&s| {
            let noise: f64 = StandardNormal.sample(rng);
            s + sigma * noise
        })
        .collect()
}

/// Channel LLRs for BPSK-AWGN: LLR_i = 2 y_i / σ².
pub fn channel_llrs(received: &[f64], cfg: &ChannelConfig) -> Vec<f64> {
    let sigma2 = cfg.noise_variance();
    received.iter().map(|&y| 2.0 * y / sigma2).collect()
}
