use super::kernels::{combine_in_place, f_layer, g_layer, hard_decision};
use super::list::{DecisionEntry, DecisionList};
use super::{run_trials, DecodeResult, FlipPass};
use crate::code::PolarCode;
use crate::crc::CrcSpec;
use crate::error::{PolarError, Result};

/// Bit-level SC decoder with optional SC-flip trials.
///
/// Decision-list entries carry the u-domain position in `node_id`.
#[derive(Debug, Clone)]
pub struct ScDecoder {
    code: PolarCode,
    crc: CrcSpec,
    t_max: usize,
    info_rank: Vec<usize>,
    llr: Vec<Vec<f64>>,
    beta: Vec<u8>,
    u_hat: Vec<u8>,
    list: DecisionList,
}

impl ScDecoder {
    pub fn new(code: &PolarCode, crc: CrcSpec, t_max: usize) -> Result<Self> {
        if t_max == 0 {
            return Err(PolarError::Config("t_max must be at least 1".into()));
        }
        if code.crc_bits() != crc.width {
            return Err(PolarError::InvalidCrc(format!(
                "code reserves {} CRC bits but the CRC has width {}",
                code.crc_bits(),
                crc.width
            )));
        }
        let n = code.n_bits();
        let mut info_rank = vec![usize::MAX; n];
        for (rank, &pos) in code.info_positions().iter().enumerate() {
            info_rank[pos] = rank;
        }
        let llr = (0..=code.stages()).map(|d| vec![0.0; n >> d]).collect();
        Ok(Self {
            code: code.clone(),
            crc,
            t_max,
            info_rank,
            llr,
            beta: vec![0; n],
            u_hat: vec![0; n],
            list: DecisionList::for_trials(t_max),
        })
    }

    /// Plain SC decoder without CRC or flipping.
    pub fn plain(code: &PolarCode) -> Result<Self> {
        let code = code.clone().with_crc_bits(0)?;
        Self::new(&code, CrcSpec::none(), 1)
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    /// One SC pass. `flip` inverts the hard decision at that u-domain position.
    pub fn decode_pass(&mut self, alpha: &[f64], flip: Option<usize>, record: bool) -> Result<&[u8]> {
        if alpha.len() != self.code.n_bits() {
            return Err(PolarError::LengthMismatch { got: alpha.len(), expected: self.code.n_bits() });
        }
        self.pass(alpha, flip, record);
        Ok(&self.u_hat)
    }

    /// Decision list recorded by the last recording pass.
    pub fn decision_list(&self) -> &DecisionList {
        &self.list
    }

    pub fn decode(&mut self, alpha: &[f64]) -> Result<DecodeResult> {
        if alpha.len() != self.code.n_bits() {
            return Err(PolarError::LengthMismatch { got: alpha.len(), expected: self.code.n_bits() });
        }
        let (t_max, crc) = (self.t_max, self.crc);
        Ok(run_trials(self, alpha, t_max, &crc))
    }

    fn pass(&mut self, alpha: &[f64], flip: Option<usize>, record: bool) {
        self.llr[0].copy_from_slice(alpha);
        if record {
            self.list.clear();
        }
        self.visit(0, self.code.n_bits(), 0, flip, record);
    }

    fn visit(&mut self, lo: usize, width: usize, depth: usize, flip: Option<usize>, record: bool) {
        if width == 1 {
            let a = self.llr[depth][0];
            let bit = if self.code.is_frozen(lo) {
                0
            } else {
                if record {
                    self.list.insert(DecisionEntry {
                        lambda: a.abs(),
                        node_id: lo,
                        local_d: 0,
                        info_index: self.info_rank[lo],
                    });
                }
                hard_decision(a) ^ u8::from(flip == Some(lo))
            };
            self.u_hat[lo] = bit;
            self.beta[lo] = bit;
            return;
        }
        let half = width / 2;
        {
            let (upper, lower) = self.llr.split_at_mut(depth + 1);
            f_layer(&upper[depth], &mut lower[0]);
        }
        self.visit(lo, half, depth + 1, flip, record);
        {
            let (upper, lower) = self.llr.split_at_mut(depth + 1);
            g_layer(&upper[depth], &self.beta[lo..lo + half], &mut lower[0]);
        }
        self.visit(lo + half, half, depth + 1, flip, record);
        combine_in_place(&mut self.beta[lo..lo + width]);
    }
}

impl FlipPass for ScDecoder {
    fn first_pass(&mut self, alpha: &[f64]) -> &DecisionList {
        self.pass(alpha, None, true);
        &self.list
    }

    fn flip_pass(&mut self, alpha: &[f64], entry: DecisionEntry) {
        self.pass(alpha, Some(entry.node_id), false);
    }

    fn info_hat(&self) -> Vec<u8> {
        self.code.info_positions().iter().map(|&p| self.u_hat[p]).collect()
    }

    fn u_hat(&self) -> &[u8] {
        &self.u_hat
    }
}

pub fn sc_decode(code: &PolarCode, alpha: &[f64]) -> Result<DecodeResult> {
    ScDecoder::plain(code)?.decode(alpha)
}

pub fn scf_decode(code: &PolarCode, alpha: &[f64], t_max: usize, crc: &CrcSpec) -> Result<DecodeResult> {
    ScDecoder::new(code, *crc, t_max)?.decode(alpha)
}
