#![allow(dead_code)]

use polar_flip::channel::{channel_llrs_into, frame_rng, sigma_from_ebn0};
use polar_flip::decoder::{
    combine, decode_birep, decode_rate1, decode_rep, decode_spc, f_minsum, g_llr, DecisionEntry,
};
use polar_flip::encode::{encode, polar_transform};
use polar_flip::{CrcSpec, DecoderTree, NodeKind, PolarCode};
use rand::seq::index::sample;
use rand::Rng;

/// Code of length `n` with a uniformly random frozen set of random size.
pub fn random_code(rng: &mut impl Rng, n: usize) -> PolarCode {
    let k = rng.random_range(1..n);
    let frozen = sample(rng, n, n - k).into_vec();
    PolarCode::new(n, k, frozen, 0).unwrap()
}

pub fn random_llrs(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

/// Channel LLRs for a random payload; returns `(info block, llrs)`.
pub fn channel_frame(code: &PolarCode, crc: &CrcSpec, ebn0_db: f64, seed: u64, frame: u64) -> (Vec<u8>, Vec<f64>) {
    let mut rng = frame_rng(seed, frame);
    let payload: Vec<u8> = (0..code.k_payload()).map(|_| rng.random_range(0..2u8)).collect();
    let info = crc.attach(&payload);
    let x = encode(code, &info).unwrap();
    let mut llr = vec![0.0; code.n_bits()];
    channel_llrs_into(&x, sigma_from_ebn0(ebn0_db, code.rate()), &mut rng, &mut llr);
    (info, llr)
}

/// Straightforward recursive walk of `tree` built only from the public
/// kernels and node decoders. Returns the u-domain estimate and every leaf
/// decision, unsorted.
pub fn oracle_pass(tree: &DecoderTree, alpha: &[f64], s_factor: f64) -> (Vec<u8>, Vec<DecisionEntry>) {
    let mut entries = Vec::new();
    let x = visit(tree, 0, alpha.to_vec(), s_factor, &mut entries);
    (polar_transform(&x).unwrap(), entries)
}

fn visit(tree: &DecoderTree, id: usize, alpha: Vec<f64>, s: f64, out: &mut Vec<DecisionEntry>) -> Vec<u8> {
    let node = tree.node(id);
    if let Some((l, r)) = node.children {
        let half = alpha.len() / 2;
        let a_l: Vec<f64> = (0..half).map(|i| f_minsum(alpha[i], alpha[i + half])).collect();
        let b_l = visit(tree, l, a_l, s, out);
        let a_r: Vec<f64> = (0..half).map(|i| g_llr(alpha[i], alpha[i + half], b_l[i])).collect();
        let b_r = visit(tree, r, a_r, s, out);
        return combine(&b_l, &b_r).unwrap();
    }
    let dec = match node.kind {
        NodeKind::Rate0 => return vec![0; alpha.len()],
        NodeKind::Rate1 => decode_rate1(&alpha, None).unwrap(),
        NodeKind::Rep => decode_rep(&alpha, false).unwrap(),
        NodeKind::Birep => decode_birep(&alpha, None).unwrap(),
        NodeKind::Spc => decode_spc(&alpha, s, None, alpha.len()).unwrap(),
        NodeKind::Branch => unreachable!(),
    };
    for (d, lambda) in dec.lambdas {
        out.push(DecisionEntry { lambda, node_id: id, local_d: d, info_index: node.info_offset + d });
    }
    dec.beta
}

/// The `capacity` smallest entries by (lambda, info_index).
pub fn sorted_prefix(mut entries: Vec<DecisionEntry>, capacity: usize) -> Vec<DecisionEntry> {
    entries.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.info_index.cmp(&b.info_index)));
    entries.truncate(capacity);
    entries
}

/// Bit-level SC written out directly from the recursion, returning u-hat and
/// the leaf LLR at every position.
pub fn reference_sc(code: &PolarCode, alpha: &[f64]) -> (Vec<u8>, Vec<f64>) {
    let n = alpha.len();
    let mut u = vec![0u8; n];
    let mut leaf = vec![0.0; n];
    sc_rec(code, alpha.to_vec(), 0, &mut u, &mut leaf);
    (u, leaf)
}

fn sc_rec(code: &PolarCode, alpha: Vec<f64>, lo: usize, u: &mut [u8], leaf: &mut [f64]) -> Vec<u8> {
    if alpha.len() == 1 {
        leaf[lo] = alpha[0];
        let bit = if code.is_frozen(lo) || alpha[0] >= 0.0 { 0 } else { 1 };
        u[lo] = bit;
        return vec![bit];
    }
    let half = alpha.len() / 2;
    let a_l: Vec<f64> = (0..half).map(|i| f_minsum(alpha[i], alpha[i + half])).collect();
    let b_l = sc_rec(code, a_l, lo, u, leaf);
    let a_r: Vec<f64> = (0..half).map(|i| g_llr(alpha[i], alpha[i + half], b_l[i])).collect();
    let b_r = sc_rec(code, a_r, lo + half, u, leaf);
    combine(&b_l, &b_r).unwrap()
}
