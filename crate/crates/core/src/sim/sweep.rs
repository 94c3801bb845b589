use rand::Rng;
use rayon::prelude::*;

use super::config::{DecoderVariant, SweepConfig};
use crate::channel::{channel_llrs_into, frame_rng, sigma_from_ebn0};
use crate::code::PolarCode;
use crate::crc::CrcSpec;
use crate::decoder::{DecodeResult, FastSscDecoder, ScDecoder};
use crate::encode::encode;
use crate::error::{PolarError, Result};
use crate::latency::{fast_ssc_latency, sc_latency_semiparallel, LatencyReport};
use crate::tree::DecoderTree;

/// Frames dispatched per parallel batch.
const BATCH_FRAMES: u64 = 1024;
/// Frames per work item inside a batch.
const CHUNK_FRAMES: u64 = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub avg_trials: f64,
    pub per_trial_cc: f64,
    pub avg_cc: f64,
    pub wc_cc: f64,
}

/// Decoder selected by [`DecoderVariant`].
#[derive(Debug, Clone)]
pub enum AnyDecoder {
    Sc(ScDecoder),
    Fast(FastSscDecoder),
}

impl AnyDecoder {
    pub fn new(variant: DecoderVariant, code: &PolarCode, tree: &DecoderTree, crc: CrcSpec, t_max: usize, s: f64) -> Result<Self> {
        let t = if variant.flips() { t_max } else { 1 };
        Ok(if variant.uses_tree() {
            Self::Fast(FastSscDecoder::new(code, tree, crc, t, s)?)
        } else {
            Self::Sc(ScDecoder::new(code, crc, t)?)
        })
    }

    pub fn decode(&mut self, alpha: &[f64]) -> Result<DecodeResult> {
        match self {
            Self::Sc(d) => d.decode(alpha),
            Self::Fast(d) => d.decode(alpha),
        }
    }
}

/// Everything a worker needs to simulate frames.
#[derive(Debug, Clone)]
pub struct SweepContext {
    pub code: PolarCode,
    pub tree: DecoderTree,
    pub crc: CrcSpec,
    pub decoder: AnyDecoder,
    pub latency: LatencyReport,
}

impl SweepContext {
    pub fn new(cfg: &SweepConfig) -> Result<Self> {
        cfg.validate()?;
        let code = cfg.build_code()?;
        let tree = DecoderTree::build(&code, cfg.constraints);
        let decoder = AnyDecoder::new(cfg.variant, &code, &tree, cfg.crc, cfg.t_max, cfg.s_factor)?;
        let per_trial = if cfg.variant.uses_tree() {
            fast_ssc_latency(&tree, &cfg.hw())
        } else {
            sc_latency_semiparallel(code.n_bits(), code.first_info_index())
        };
        let latency = LatencyReport::new(per_trial, cfg.effective_t_max(), 1.0);
        Ok(Self { code, tree, crc: cfg.crc, decoder, latency })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrameOutcome {
    pub frame_error: bool,
    pub bit_errors: u32,
    pub trials: u32,
}

/// Buffers reused across frames.
struct Scratch {
    payload: Vec<u8>,
    info: Vec<u8>,
    llr: Vec<f64>,
}

impl Scratch {
    fn new(code: &PolarCode) -> Self {
        Self { payload: vec![0; code.k_payload()], info: vec![0; code.k_info()], llr: vec![0.0; code.n_bits()] }
    }
}

fn simulate_frame(
    code: &PolarCode,
    crc: &CrcSpec,
    dec: &mut AnyDecoder,
    sigma: f64,
    seed: u64,
    frame: u64,
    s: &mut Scratch,
) -> Result<FrameOutcome> {
    let mut rng = frame_rng(seed, frame);
    for b in s.payload.iter_mut() {
        *b = u8::from(rng.random::<bool>());
    }
    crc.attach_into(&s.payload, &mut s.info);
    let x = encode(code, &s.info)?;
    channel_llrs_into(&x, sigma, &mut rng, &mut s.llr);
    let res = dec.decode(&s.llr)?;
    let bit_errors = res.info_hat[..s.payload.len()].iter().zip(&s.payload).filter(|(a, b)| a != b).count();
    Ok(FrameOutcome { frame_error: bit_errors > 0, bit_errors: bit_errors as u32, trials: res.trials_used as u32 })
}

/// Simulates frames `first..first + count` at noise level `sigma`, in order.
pub fn simulate_frames(ctx: &SweepContext, sigma: f64, seed: u64, first: u64, count: u64) -> Result<Vec<FrameOutcome>> {
    let chunks: Vec<u64> = (first..first + count).step_by(CHUNK_FRAMES as usize).collect();
    let parts: Vec<Result<Vec<FrameOutcome>>> = chunks
        .par_iter()
        .map(|&start| {
            let end = (start + CHUNK_FRAMES).min(first + count);
            let mut dec = ctx.decoder.clone();
            let mut scratch = Scratch::new(&ctx.code);
            (start..end)
                .map(|f| simulate_frame(&ctx.code, &ctx.crc, &mut dec, sigma, seed, f, &mut scratch))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    trials: u64,
}

fn run_point(ctx: &SweepContext, cfg: &SweepConfig, ebn0_db: f64) -> Result<SweepRow> {
    let sigma = sigma_from_ebn0(ebn0_db, ctx.code.rate());
    let mut t = Tally::default();
    'outer: while t.frames < cfg.max_frames {
        let count = BATCH_FRAMES.min(cfg.max_frames - t.frames);
        for o in simulate_frames(ctx, sigma, cfg.seed, t.frames, count)? {
            t.frames += 1;
            t.trials += u64::from(o.trials);
            t.bit_errors += u64::from(o.bit_errors);
            if o.frame_error {
                t.frame_errors += 1;
                if t.frame_errors >= cfg.min_errors {
                    break 'outer;
                }
            }
        }
    }
    let frames = t.frames as f64;
    let avg_trials = t.trials as f64 / frames;
    let report = LatencyReport::new(ctx.latency.per_trial_cc, cfg.effective_t_max(), avg_trials);
    Ok(SweepRow {
        ebn0_db,
        frames: t.frames,
        frame_errors: t.frame_errors,
        bit_errors: t.bit_errors,
        fer: t.frame_errors as f64 / frames,
        ber: t.bit_errors as f64 / (frames * ctx.code.k_payload() as f64),
        avg_trials,
        per_trial_cc: report.per_trial_cc,
        avg_cc: report.avg_cc,
        wc_cc: report.worst_case_cc,
    })
}

/// Runs every grid point in order. Frame `i` of every point uses the RNG
/// substream `i` of `cfg.seed`, so results do not depend on `cfg.workers`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let ctx = SweepContext::new(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| PolarError::Config(format!("thread pool: {e}")))?;
    pool.install(|| cfg.ebn0_db.iter().map(|&e| run_point(&ctx, cfg, e)).collect())
}
