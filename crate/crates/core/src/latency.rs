//! Clock-cycle and memory models.
//!
//! The semi-parallel SC model is closed form. The fast-SSC model walks the
//! decoder tree and charges each f, g, combine and leaf operation
//! `ceil(m / P)` cycles for an output of length `m`, with these exceptions:
//!
//! * Rate-0 leaves, the LLRs feeding them and combines with a Rate-0 child are free.
//! * SPC leaves cost one extra cycle for parity and candidate selection.
//! * Combines whose output is never read are skipped. These are the combines
//!   on the right spine from the root, since the decoder outputs the u-domain
//!   estimate assembled from the leaves. [`HwParams::dead_combines`] counts them anyway.
//!
//! The result is scaled by [`HwParams::calibration`].

use crate::code::PolarCode;
use crate::error::{PolarError, Result};
use crate::tree::{DecoderTree, NodeKind};

/// Processing width of the baseline semi-parallel SC decoder.
const SC_LANES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwParams {
    /// LLRs processed per cycle.
    pub p_lanes: usize,
    /// Bits per stored decision LLR.
    pub q_lambda: usize,
    pub t_max: usize,
    /// Multiplier applied to fast-SSC cycle counts.
    pub calibration: f64,
    /// Charge combines whose result is never consumed.
    pub dead_combines: bool,
}

impl Default for HwParams {
    fn default() -> Self {
        Self { p_lanes: 64, q_lambda: 8, t_max: 8, calibration: 1.0, dead_combines: false }
    }
}

impl HwParams {
    pub fn validate(&self) -> Result<()> {
        if self.p_lanes < 2 || !self.p_lanes.is_power_of_two() {
            return Err(PolarError::Config(format!("p_lanes {} must be a power of two >= 2", self.p_lanes)));
        }
        if self.q_lambda == 0 {
            return Err(PolarError::Config("q_lambda must be >= 1".into()));
        }
        if self.t_max == 0 {
            return Err(PolarError::Config("t_max must be >= 1".into()));
        }
        if !(self.calibration.is_finite() && self.calibration > 0.0) {
            return Err(PolarError::Config(format!("calibration {} must be positive", self.calibration)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyReport {
    pub per_trial_cc: f64,
    pub worst_case_cc: f64,
    pub avg_cc: f64,
}

impl LatencyReport {
    pub fn new(per_trial_cc: f64, t_max: usize, avg_trials: f64) -> Self {
        Self {
            per_trial_cc,
            worst_case_cc: scf_worst_case(t_max, per_trial_cc),
            avg_cc: average_execution(avg_trials, per_trial_cc),
        }
    }
}

/// Semi-parallel SC latency for length `n_bits` with `b_first_info` leading
/// frozen bits. `n_bits` must be a power of two; for `N < 256` the log term is
/// negative and the result is still evaluated as a real number.
pub fn sc_latency_semiparallel(n_bits: usize, b_first_info: usize) -> f64 {
    debug_assert!(n_bits.is_power_of_two() && b_first_info < n_bits);
    let n = n_bits as f64;
    let stages = n_bits.trailing_zeros();
    let correction: usize = (0..=stages)
        .map(|i| (b_first_info >> i) * (1usize << i).div_ceil(SC_LANES))
        .sum();
    2.0 * n + (n / SC_LANES as f64) * (n / 256.0).log2() - correction as f64
}

pub fn scf_worst_case(t_max: usize, per_trial_cc: f64) -> f64 {
    t_max as f64 * per_trial_cc
}

pub fn average_execution(avg_trials: f64, per_trial_cc: f64) -> f64 {
    avg_trials * per_trial_cc
}

/// Uncalibrated cycle count of one fast-SSC pass.
pub fn fast_ssc_cycles(tree: &DecoderTree, p_lanes: usize, dead_combines: bool) -> u64 {
    node_cycles(tree, 0, p_lanes, dead_combines)
}

fn chunks(m: usize, p: usize) -> u64 {
    m.div_ceil(p) as u64
}

// `needed`: the node's beta is read by a g or by a needed combine.
fn node_cycles(tree: &DecoderTree, id: usize, p: usize, needed: bool) -> u64 {
    let node = tree.node(id);
    let w = node.width;
    match node.children {
        None => match node.kind {
            NodeKind::Rate0 => 0,
            NodeKind::Spc => chunks(w, p) + 1,
            _ => chunks(w, p),
        },
        Some((l, r)) => {
            let half = w / 2;
            let l_rate0 = tree.node(l).kind == NodeKind::Rate0;
            let r_rate0 = tree.node(r).kind == NodeKind::Rate0;
            let f = if l_rate0 { 0 } else { chunks(half, p) };
            let g = if r_rate0 { 0 } else { chunks(half, p) };
            let combine = if l_rate0 || r_rate0 || !needed { 0 } else { chunks(w, p) };
            f + node_cycles(tree, l, p, true) + g + node_cycles(tree, r, p, needed) + combine
        }
    }
}

/// Calibrated per-trial fast-SSC latency.
pub fn fast_ssc_latency(tree: &DecoderTree, hw: &HwParams) -> f64 {
    fast_ssc_cycles(tree, hw.p_lanes, hw.dead_combines) as f64 * hw.calibration
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryEstimate {
    pub lambda_bits: usize,
    pub index_bits: usize,
}

/// Decision-list storage for `t_max - 1` entries over the `k` unfrozen bits.
pub fn memory_estimate(code: &PolarCode, hw: &HwParams) -> MemoryEstimate {
    let entries = hw.t_max.saturating_sub(1);
    let k = code.k_info();
    let index_width = if k <= 1 { 0 } else { (usize::BITS - (k - 1).leading_zeros()) as usize };
    MemoryEstimate { lambda_bits: hw.q_lambda * entries, index_bits: entries * index_width }
}
