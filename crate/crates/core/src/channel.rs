//! BPSK over AWGN, channel LLRs and per-frame random streams.
//!
//! Every frame draws from its own ChaCha8 stream: the key comes from the
//! run seed and the stream id is the frame index, so a frame's payload and
//! noise do not depend on which worker decodes it or in which order.
//! Gaussian samples use the ziggurat sampler of `rand_distr` (`StandardNormal`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `sigma = sqrt(1 / (2 R 10^(EbN0/10)))`.
pub fn sigma_from_ebn0(ebn0_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub ebn0_db: f64,
    pub rate: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl ChannelParams {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Self {
        Self { ebn0_db, rate, sigma: sigma_from_ebn0(ebn0_db, rate), seed }
    }
}

/// Random stream owned by a single frame.
pub fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame);
    rng
}

pub fn modulate_bpsk(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

pub fn transmit_awgn<R: Rng + ?Sized>(symbols: &[f64], sigma: f64, rng: &mut R) -> Vec<f64> {
    symbols.iter().map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal)).collect()
}

/// `alpha = 2 y / sigma^2`; positive values favor bit 0.
pub fn llr_from_channel(y: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    y.iter().map(|&v| scale * v).collect()
}

/// Modulate, add noise and compute LLRs in one pass into `llr`.
pub fn channel_llrs_into<R: Rng + ?Sized>(codeword: &[u8], sigma: f64, rng: &mut R, llr: &mut [f64]) {
    let scale = 2.0 / (sigma * sigma);
    for (out, &bit) in llr.iter_mut().zip(codeword) {
        let s = if bit == 0 { 1.0 } else { -1.0 };
        let y = s + sigma * rng.sample::<f64, _>(StandardNormal);
        *out = scale * y;
    }
}
