use super::kernels::{combine_in_place, f_layer, g_layer};
use super::list::{DecisionEntry, DecisionList, FlipTarget};
use super::nodes::{birep_into, rate1_into, rep_into, spc_into};
use super::{run_trials, DecodeResult, FlipPass};
use crate::code::PolarCode;
use crate::crc::CrcSpec;
use crate::encode::polar_transform_in_place;
use crate::error::{PolarError, Result};
use crate::tree::{DecoderTree, NodeKind};

/// Fast-SSC decoder over a pruned tree, with fast-SSC-flip trials when
/// `t_max > 1` and a CRC is configured.
#[derive(Debug, Clone)]
pub struct FastSscDecoder {
    code: PolarCode,
    tree: DecoderTree,
    crc: CrcSpec,
    t_max: usize,
    s_factor: f64,
    llr: Vec<Vec<f64>>,
    beta: Vec<u8>,
    u_hat: Vec<u8>,
    list: DecisionList,
}

impl FastSscDecoder {
    pub fn new(code: &PolarCode, tree: &DecoderTree, crc: CrcSpec, t_max: usize, s_factor: f64) -> Result<Self> {
        if tree.n_bits() != code.n_bits() {
            return Err(PolarError::LengthMismatch { got: tree.n_bits(), expected: code.n_bits() });
        }
        if t_max == 0 {
            return Err(PolarError::Config("t_max must be at least 1".into()));
        }
        if !(s_factor.is_finite() && s_factor >= 0.0) {
            return Err(PolarError::Config(format!("SPC scaling factor {s_factor} must be finite and >= 0")));
        }
        if code.crc_bits() != crc.width {
            return Err(PolarError::InvalidCrc(format!(
                "code reserves {} CRC bits but the CRC has width {}",
                code.crc_bits(),
                crc.width
            )));
        }
        let n = code.n_bits();
        Ok(Self {
            code: code.clone(),
            tree: tree.clone(),
            crc,
            t_max,
            s_factor,
            llr: (0..=code.stages()).map(|d| vec![0.0; n >> d]).collect(),
            beta: vec![0; n],
            u_hat: vec![0; n],
            list: DecisionList::for_trials(t_max),
        })
    }

    /// Fast-SSC without CRC or flipping.
    pub fn plain(code: &PolarCode, tree: &DecoderTree, s_factor: f64) -> Result<Self> {
        let code = code.clone().with_crc_bits(0)?;
        Self::new(&code, tree, CrcSpec::none(), 1, s_factor)
    }

    /// Replaces the decision-list capacity (defaults to `t_max - 1`).
    pub fn with_list_capacity(mut self, capacity: usize) -> Self {
        self.list = DecisionList::new(capacity);
        self
    }

    pub fn tree(&self) -> &DecoderTree {
        &self.tree
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    pub fn decision_list(&self) -> &DecisionList {
        &self.list
    }

    fn check_flip(&self, target: &FlipTarget) -> Result<()> {
        let e = &target.0;
        let Some(node) = self.tree.nodes().get(e.node_id) else {
            return Err(PolarError::InvalidFlipNode(e.node_id));
        };
        if !node.is_leaf() || node.info_bits() == 0 {
            return Err(PolarError::InvalidFlipNode(e.node_id));
        }
        if e.local_d >= node.info_bits() {
            return Err(PolarError::InvalidFlip { index: e.local_d, width: node.width });
        }
        Ok(())
    }

    /// One pass. With `record`, the decision list is rebuilt from the leaves.
    pub fn decode_pass(&mut self, alpha: &[f64], flip: Option<FlipTarget>, record: bool) -> Result<&[u8]> {
        if alpha.len() != self.code.n_bits() {
            return Err(PolarError::LengthMismatch { got: alpha.len(), expected: self.code.n_bits() });
        }
        if let Some(t) = &flip {
            self.check_flip(t)?;
        }
        self.pass(alpha, flip.map(|t| (t.0.node_id, t.0.local_d)), record);
        Ok(&self.u_hat)
    }

    pub fn decode(&mut self, alpha: &[f64]) -> Result<DecodeResult> {
        if alpha.len() != self.code.n_bits() {
            return Err(PolarError::LengthMismatch { got: alpha.len(), expected: self.code.n_bits() });
        }
        let (t_max, crc) = (self.t_max, self.crc);
        Ok(run_trials(self, alpha, t_max, &crc))
    }

    fn pass(&mut self, alpha: &[f64], flip: Option<(usize, usize)>, record: bool) {
        self.llr[0].copy_from_slice(alpha);
        if record {
            self.list.clear();
        }
        self.visit(0, 0, flip, record);
    }

    fn visit(&mut self, id: usize, depth: usize, flip: Option<(usize, usize)>, record: bool) {
        let node = self.tree.node(id);
        let (lo, hi, kind) = (node.lo, node.hi, node.kind);
        if let Some((left, right)) = node.children {
            let half = node.width / 2;
            let left_rate0 = self.tree.node(left).kind == NodeKind::Rate0;
            let right_rate0 = self.tree.node(right).kind == NodeKind::Rate0;
            if !left_rate0 {
                let (upper, lower) = self.llr.split_at_mut(depth + 1);
                f_layer(&upper[depth], &mut lower[0]);
            }
            self.visit(left, depth + 1, flip, record);
            if !right_rate0 {
                let (upper, lower) = self.llr.split_at_mut(depth + 1);
                g_layer(&upper[depth], &self.beta[lo..lo + half], &mut lower[0]);
            }
            self.visit(right, depth + 1, flip, record);
            combine_in_place(&mut self.beta[lo..hi]);
            return;
        }

        let local_flip = flip.filter(|&(n, _)| n == id).map(|(_, d)| d);
        let info_offset = node.info_offset;
        let Self { llr, beta, list, s_factor, .. } = self;
        let alpha = &llr[depth][..hi - lo];
        let beta = &mut beta[lo..hi];
        let mut emit = |d: usize, lambda: f64| {
            if record {
                list.insert(DecisionEntry { lambda, node_id: id, local_d: d, info_index: info_offset + d });
            }
        };
        match kind {
            NodeKind::Rate0 => beta.fill(0),
            NodeKind::Rate1 => rate1_into(alpha, local_flip, beta, &mut emit),
            NodeKind::Rep => rep_into(alpha, local_flip.is_some(), beta, &mut emit),
            NodeKind::Birep => birep_into(alpha, local_flip, beta, &mut emit),
            NodeKind::Spc => spc_into(alpha, *s_factor, local_flip.map(|d| d + 1), beta, &mut emit),
            NodeKind::Branch => unreachable!("branch nodes have children"),
        }
        let u = &mut self.u_hat[lo..hi];
        u.copy_from_slice(beta);
        polar_transform_in_place(u);
    }
}

impl FlipPass for FastSscDecoder {
    fn first_pass(&mut self, alpha: &[f64]) -> &DecisionList {
        self.pass(alpha, None, true);
        &self.list
    }

    fn flip_pass(&mut self, alpha: &[f64], entry: DecisionEntry) {
        self.pass(alpha, Some((entry.node_id, entry.local_d)), false);
    }

    fn info_hat(&self) -> Vec<u8> {
        self.code.info_positions().iter().map(|&p| self.u_hat[p]).collect()
    }

    fn u_hat(&self) -> &[u8] {
        &self.u_hat
    }
}

/// Single fast-SSC pass, optionally flipping `flip`, returning the result and
/// a decision list of `list_capacity` entries.
pub fn fast_ssc_decode(
    code: &PolarCode,
    tree: &DecoderTree,
    alpha: &[f64],
    flip: Option<FlipTarget>,
    s_factor: f64,
    list_capacity: usize,
) -> Result<(DecodeResult, DecisionList)> {
    let mut dec = FastSscDecoder::plain(code, tree, s_factor)?.with_list_capacity(list_capacity);
    dec.decode_pass(alpha, flip, true)?;
    let info_hat = dec.info_hat();
    let result = DecodeResult { u_hat: dec.u_hat.clone(), info_hat, trials_used: 1, crc_ok: true };
    Ok((result, dec.list))
}

pub fn fast_ssc_flip_decode(
    code: &PolarCode,
    tree: &DecoderTree,
    alpha: &[f64],
    t_max: usize,
    s_factor: f64,
    crc: &CrcSpec,
) -> Result<DecodeResult> {
    FastSscDecoder::new(code, tree, *crc, t_max, s_factor)?.decode(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::frame_rng;
    use crate::code::{construct_frozen_set, DesignPoint};
    use crate::decoder::sc::ScDecoder;
    use crate::tree::NodeConstraints;
    use rand::Rng;

    fn toy() -> PolarCode {
        PolarCode::new(8, 5, [0, 1, 4], 0).unwrap()
    }

    fn random_llrs(rng: &mut impl Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.random_range(-4.0..4.0)).collect()
    }

    #[test]
    fn toy_noiseless() {
        let code = toy();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let (res, list) = fast_ssc_decode(&code, &tree, &[3.0; 8], None, 1.0, 4).unwrap();
        assert_eq!(res.u_hat, vec![0; 8]);
        assert_eq!(list.len(), 4);
    }

    #[test]
    fn matches_sc_on_toy() {
        let code = toy();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let mut fast = FastSscDecoder::plain(&code, &tree, 1.0).unwrap();
        let mut sc = ScDecoder::plain(&code).unwrap();
        let mut rng = frame_rng(11, 0);
        for _ in 0..5000 {
            let alpha = random_llrs(&mut rng, 8);
            assert_eq!(fast.decode(&alpha).unwrap().u_hat, sc.decode(&alpha).unwrap().u_hat, "{alpha:?}");
        }
    }

    #[test]
    fn frozen_positions_stay_zero() {
        let code = construct_frozen_set(64, 30, DesignPoint::EbN0Db(2.0)).unwrap();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let mut dec = FastSscDecoder::plain(&code, &tree, 0.5).unwrap();
        let mut rng = frame_rng(12, 0);
        for _ in 0..500 {
            let u = dec.decode(&random_llrs(&mut rng, 64)).unwrap().u_hat;
            assert!(code.frozen_indices().iter().all(|&i| u[i] == 0));
        }
    }

    #[test]
    fn invalid_flip_targets() {
        let code = toy();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let target = |node_id, local_d| {
            Some(FlipTarget(DecisionEntry { lambda: 0.0, node_id, local_d, info_index: 0 }))
        };
        let alpha = [1.0; 8];
        assert!(fast_ssc_decode(&code, &tree, &alpha, target(0, 0), 1.0, 4).is_err());
        assert!(fast_ssc_decode(&code, &tree, &alpha, target(9, 0), 1.0, 4).is_err());
        assert!(fast_ssc_decode(&code, &tree, &alpha, target(1, 2), 1.0, 4).is_err());
        assert!(fast_ssc_decode(&code, &tree, &alpha, target(2, 2), 1.0, 4).is_ok());
    }

    #[test]
    fn flip_on_birep_leaf() {
        let code = toy();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let flip = FlipTarget(DecisionEntry { lambda: 0.0, node_id: 1, local_d: 1, info_index: 1 });
        let (res, _) = fast_ssc_decode(&code, &tree, &[3.0; 8], Some(flip), 1.0, 0).unwrap();
        // Odd half of the birep codeword flipped: beta = [0,1,0,1] -> u_3 = 1 and u_2 = 1.
        assert_eq!(&res.u_hat[..4], &[0, 0, 1, 1]);
    }

    #[test]
    fn list_entries_have_consistent_ordinals() {
        let code = construct_frozen_set(64, 32, DesignPoint::EbN0Db(2.0)).unwrap();
        let tree = DecoderTree::build(&code, NodeConstraints::unconstrained());
        let mut rng = frame_rng(13, 0);
        let (_, list) = fast_ssc_decode(&code, &tree, &random_llrs(&mut rng, 64), None, 1.0, 32).unwrap();
        assert_eq!(list.len(), 32);
        let mut seen: Vec<_> = list.entries().iter().map(|e| e.info_index).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 32);
    }
}
