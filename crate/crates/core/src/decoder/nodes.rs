//! Constituent-code decoders with decision LLRs and flip support.
//!
//! Each decoder writes the node's codeword-domain estimate `beta` and reports
//! one decision LLR per information bit through `emit(local_d, lambda)`.
//! Flips are applied after the regular decode.

use super::kernels::hard_decision;
use crate::error::{PolarError, Result};

/// Output of a constituent decoder: `lambdas` holds `(local_d, lambda)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeDecision {
    pub beta: Vec<u8>,
    pub lambdas: Vec<(usize, f64)>,
}

/// Sum of `count` values starting at `start` with the given stride, associated
/// exactly as the SC g-recursion over an all-frozen left subtree adds them.
pub(crate) fn butterfly_sum(alpha: &[f64], start: usize, stride: usize, count: usize) -> f64 {
    if count == 1 {
        alpha[start]
    } else {
        let half = count / 2;
        butterfly_sum(alpha, start + stride, 2 * stride, half) + butterfly_sum(alpha, start, 2 * stride, half)
    }
}

pub(crate) fn rate1_into(alpha: &[f64], flip: Option<usize>, beta: &mut [u8], emit: &mut impl FnMut(usize, f64)) {
    for (d, (b, &a)) in beta.iter_mut().zip(alpha).enumerate() {
        *b = hard_decision(a);
        emit(d, a.abs());
    }
    if let Some(d) = flip {
        beta[d] ^= 1;
    }
}

pub(crate) fn rep_into(alpha: &[f64], flip: bool, beta: &mut [u8], emit: &mut impl FnMut(usize, f64)) {
    let s = butterfly_sum(alpha, 0, 1, alpha.len());
    let bit = hard_decision(s) ^ u8::from(flip);
    beta.fill(bit);
    emit(0, s.abs());
}

pub(crate) fn birep_into(alpha: &[f64], flip: Option<usize>, beta: &mut [u8], emit: &mut impl FnMut(usize, f64)) {
    let half = alpha.len() / 2;
    let sums = [butterfly_sum(alpha, 0, 2, half), butterfly_sum(alpha, 1, 2, half)];
    let mut bits = [hard_decision(sums[0]), hard_decision(sums[1])];
    if let Some(d) = flip {
        bits[d] ^= 1;
    }
    for (i, b) in beta.iter_mut().enumerate() {
        *b = bits[i & 1];
    }
    emit(0, sums[0].abs());
    emit(1, sums[1].abs());
}

/// `flip` is a position in `1..N_v` (position 0 carries the frozen bit).
pub(crate) fn spc_into(
    alpha: &[f64],
    s_factor: f64,
    flip: Option<usize>,
    beta: &mut [u8],
    emit: &mut impl FnMut(usize, f64),
) {
    let mut parity = 0u8;
    let (mut min1, mut min2) = (f64::INFINITY, f64::INFINITY);
    let (mut i_min1, mut i_min2) = (0usize, 0usize);
    for (i, (b, &a)) in beta.iter_mut().zip(alpha).enumerate() {
        let hd = hard_decision(a);
        *b = hd;
        parity ^= hd;
        let m = a.abs();
        if m < min1 {
            (min2, i_min2) = (min1, i_min1);
            (min1, i_min1) = (m, i);
        } else if m < min2 {
            (min2, i_min2) = (m, i);
        }
    }
    if parity == 1 {
        beta[i_min1] ^= 1;
    }
    if let Some(i_flip) = flip {
        let partner = if i_flip == i_min1 { i_min2 } else { i_min1 };
        beta[i_flip] ^= 1;
        beta[partner] ^= 1;
    }
    let offset = if parity == 1 { -s_factor * min1 } else { s_factor * min1 };
    for (d, &a) in alpha[1..].iter().enumerate() {
        emit(d, a.abs() + offset);
    }
}

fn collect(f: impl FnOnce(&mut dyn FnMut(usize, f64))) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    f(&mut |d, l| out.push((d, l)));
    out
}

pub fn decode_rate1(alpha: &[f64], flip: Option<usize>) -> Result<NodeDecision> {
    if let Some(d) = flip.filter(|&d| d >= alpha.len()) {
        return Err(PolarError::InvalidFlip { index: d, width: alpha.len() });
    }
    let mut beta = vec![0; alpha.len()];
    let lambdas = collect(|e| rate1_into(alpha, flip, &mut beta, &mut |d, l| e(d, l)));
    Ok(NodeDecision { beta, lambdas })
}

pub fn decode_rep(alpha: &[f64], flip: bool) -> Result<NodeDecision> {
    if !alpha.len().is_power_of_two() {
        return Err(PolarError::NotPowerOfTwo(alpha.len()));
    }
    let mut beta = vec![0; alpha.len()];
    let lambdas = collect(|e| rep_into(alpha, flip, &mut beta, &mut |d, l| e(d, l)));
    Ok(NodeDecision { beta, lambdas })
}

/// `flip`: `Some(0)` inverts the even-indexed half, `Some(1)` the odd one.
pub fn decode_birep(alpha: &[f64], flip: Option<usize>) -> Result<NodeDecision> {
    if alpha.len() < 4 || !alpha.len().is_power_of_two() {
        return Err(PolarError::NotPowerOfTwo(alpha.len()));
    }
    if let Some(d) = flip.filter(|&d| d > 1) {
        return Err(PolarError::InvalidFlip { index: d, width: alpha.len() });
    }
    let mut beta = vec![0; alpha.len()];
    let lambdas = collect(|e| birep_into(alpha, flip, &mut beta, &mut |d, l| e(d, l)));
    Ok(NodeDecision { beta, lambdas })
}

/// SPC decode. `flip` is a position in `1..N_v`; only the `t_cap` smallest
/// decision LLRs are returned, ascending (ties by `local_d`).
pub fn decode_spc(alpha: &[f64], s_factor: f64, flip: Option<usize>, t_cap: usize) -> Result<NodeDecision> {
    let n = alpha.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(PolarError::NotPowerOfTwo(n));
    }
    if let Some(i) = flip.filter(|&i| i == 0 || i >= n) {
        return Err(PolarError::InvalidFlip { index: i, width: n });
    }
    let mut beta = vec![0; n];
    let mut lambdas = collect(|e| spc_into(alpha, s_factor, flip, &mut beta, &mut |d, l| e(d, l)));
    lambdas.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    lambdas.truncate(t_cap);
    Ok(NodeDecision { beta, lambdas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lambdas(dec: &NodeDecision) -> Vec<f64> {
        dec.lambdas.iter().map(|&(_, l)| l).collect()
    }

    #[test]
    fn rate1_examples() {
        let dec = decode_rate1(&[1.5, -0.2], None).unwrap();
        assert_eq!(dec.beta, vec![0, 1]);
        assert_eq!(lambdas(&dec), vec![1.5, 0.2]);
        assert_eq!(decode_rate1(&[1.5, -0.2], Some(0)).unwrap().beta, vec![1, 1]);
        assert!(decode_rate1(&[1.5, -0.2], Some(2)).is_err());
    }

    #[test]
    fn rep_examples() {
        let dec = decode_rep(&[1.0, -2.0, 3.0, 0.5], false).unwrap();
        assert_eq!(dec.beta, vec![0; 4]);
        assert_eq!(lambdas(&dec), vec![2.5]);
        assert_eq!(decode_rep(&[1.0, -2.0, 3.0, 0.5], true).unwrap().beta, vec![1; 4]);

        let tie = decode_rep(&[1.0, -1.0, 2.0, -2.0], false).unwrap();
        assert_eq!(tie.beta, vec![0; 4]);
        assert_eq!(lambdas(&tie), vec![0.0]);
    }

    #[test]
    fn birep_examples() {
        let dec = decode_birep(&[1.0, -2.0, 3.0, 0.5], None).unwrap();
        assert_eq!(dec.beta, vec![0, 1, 0, 1]);
        assert_eq!(lambdas(&dec), vec![4.0, 1.5]);
        assert_eq!(decode_birep(&[1.0, -2.0, 3.0, 0.5], Some(1)).unwrap().beta, vec![0; 4]);
        assert_eq!(decode_birep(&[1.0, -2.0, 3.0, 0.5], Some(0)).unwrap().beta, vec![1; 4]);
    }

    #[test]
    fn spc_example_parity_violated() {
        let dec = decode_spc(&[0.5, -1.0, 2.0, 3.0], 1.0, None, 8).unwrap();
        assert_eq!(dec.beta, vec![1, 1, 0, 0]);
        assert_eq!(dec.lambdas, vec![(0, 0.5), (1, 1.5), (2, 2.5)]);
    }

    #[test]
    fn spc_example_scaled() {
        let dec = decode_spc(&[1.0, 1.0, 1.0, -4.0], 0.5, None, 8).unwrap();
        assert_eq!(dec.beta, vec![1, 0, 0, 1]);
        assert_eq!(dec.lambdas, vec![(0, 0.5), (1, 0.5), (2, 3.5)]);
    }

    #[test]
    fn spc_parity_satisfied_branch() {
        let alpha = [0.5, -1.0, -2.0, 3.0];
        let dec = decode_spc(&alpha, 1.0, None, 8).unwrap();
        assert_eq!(dec.beta, vec![0, 1, 1, 0]);
        // Same magnitudes with p = 1 give strictly smaller lambdas.
        let violated = decode_spc(&[0.5, -1.0, 2.0, 3.0], 1.0, None, 8).unwrap();
        let mut sat = dec.lambdas.clone();
        sat.sort_by_key(|&(d, _)| d);
        for ((_, a), (_, b)) in sat.iter().zip(&violated.lambdas) {
            assert!(a > b);
        }
        assert_eq!(sat, vec![(0, 1.5), (1, 2.5), (2, 3.5)]);
    }

    #[test]
    fn spc_flip_rules() {
        let alpha = [0.5, -1.0, 2.0, 3.0];
        // i_min1 = 0, i_min2 = 1. Flipping i = 2 also toggles i_min1.
        assert_eq!(decode_spc(&alpha, 1.0, Some(2), 8).unwrap().beta, vec![0, 1, 1, 0]);
        // Flipping i_min1 itself toggles i_min2: needs i_min1 != 0.
        let alpha = [2.0, -0.1, 0.3, 3.0];
        assert_eq!(decode_spc(&alpha, 1.0, None, 8).unwrap().beta, vec![0, 0, 0, 0]);
        assert_eq!(decode_spc(&alpha, 1.0, Some(1), 8).unwrap().beta, vec![0, 1, 1, 0]);
        assert!(decode_spc(&alpha, 1.0, Some(0), 8).is_err());
        assert!(decode_spc(&alpha, 1.0, Some(4), 8).is_err());
    }

    #[test]
    fn spc_t_cap_truncates() {
        let dec = decode_spc(&[0.5, -1.0, 2.0, 3.0], 1.0, None, 2).unwrap();
        assert_eq!(dec.lambdas, vec![(0, 0.5), (1, 1.5)]);
    }

    #[test]
    fn butterfly_sum_order() {
        let a = [1.0, 2.0, 4.0, 8.0];
        assert_eq!(butterfly_sum(&a, 0, 1, 4), (8.0 + 2.0) + (4.0 + 1.0));
        assert_eq!(butterfly_sum(&a, 1, 2, 2), 8.0 + 2.0);
    }

    fn llrs(width: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-8.0f64..8.0, width)
    }

    proptest! {
        #[test]
        fn rate1_double_flip_restores(alpha in llrs(8), d in 0usize..8) {
            let mut beta = decode_rate1(&alpha, Some(d)).unwrap().beta;
            beta[d] ^= 1;
            prop_assert_eq!(beta, decode_rate1(&alpha, None).unwrap().beta);
        }

        #[test]
        fn spc_even_parity(
            (alpha, flip) in (2u32..=6).prop_flat_map(|m| {
                let n = 1usize << m;
                (llrs(n), prop::option::of(1..n))
            }),
            s in 0.0f64..=1.0,
        ) {
            let dec = decode_spc(&alpha, s, flip, 64).unwrap();
            prop_assert_eq!(dec.beta.iter().fold(0, |p, b| p ^ b), 0);
        }
    }
}
