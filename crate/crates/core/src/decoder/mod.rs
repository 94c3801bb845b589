//! SC-family decoders.
//!
//! [`ScDecoder`] walks the full binary tree bit by bit. [`FastSscDecoder`]
//! walks a pruned [`DecoderTree`](crate::tree::DecoderTree) and decodes its
//! leaves with dedicated constituent-code rules. Both support CRC-aided
//! bit-flipping: the first trial records a sorted list of the least reliable
//! decisions, and trial `t >= 2` flips the `(t-1)`-th entry of that list.

mod fast_ssc;
mod kernels;
mod list;
mod nodes;
mod sc;

pub use fast_ssc::{fast_ssc_decode, fast_ssc_flip_decode, FastSscDecoder};
pub use kernels::{combine, f_minsum, g_llr, hard_decision};
pub use list::{DecisionEntry, DecisionList, FlipTarget};
pub use nodes::{decode_birep, decode_rate1, decode_rep, decode_spc, NodeDecision};
pub use sc::{sc_decode, scf_decode, ScDecoder};

use crate::crc::CrcSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// u-domain estimate, frozen positions are 0.
    pub u_hat: Vec<u8>,
    /// `u_hat` on the unfrozen positions, payload followed by CRC.
    pub info_hat: Vec<u8>,
    pub trials_used: usize,
    /// CRC verdict on `info_hat`; vacuously true without a CRC.
    pub crc_ok: bool,
}

/// One decoding pass as seen by the trial loop.
pub(crate) trait FlipPass {
    /// Regular pass; fills the decision list.
    fn first_pass(&mut self, alpha: &[f64]) -> &DecisionList;
    /// Pass flipping the decision described by `entry`.
    fn flip_pass(&mut self, alpha: &[f64], entry: DecisionEntry);
    fn info_hat(&self) -> Vec<u8>;
    fn u_hat(&self) -> &[u8];
}

/// Runs up to `t_max` trials and stops at the first CRC pass. When every trial
/// fails, the first-trial estimate is returned.
pub(crate) fn run_trials<D: FlipPass>(dec: &mut D, alpha: &[f64], t_max: usize, crc: &CrcSpec) -> DecodeResult {
    let candidates: Vec<DecisionEntry> = dec.first_pass(alpha).entries().to_vec();
    let info = dec.info_hat();
    let crc_ok = crc.check(&info);
    let first = DecodeResult { u_hat: dec.u_hat().to_vec(), info_hat: info, trials_used: 1, crc_ok };
    if crc_ok || crc.is_none() {
        return first;
    }
    let mut trials = 1;
    for &entry in candidates.iter().take(t_max.saturating_sub(1)) {
        dec.flip_pass(alpha, entry);
        trials += 1;
        let info = dec.info_hat();
        if crc.check(&info) {
            return DecodeResult { u_hat: dec.u_hat().to_vec(), info_hat: info, trials_used: trials, crc_ok: true };
        }
    }
    DecodeResult { trials_used: trials, ..first }
}
