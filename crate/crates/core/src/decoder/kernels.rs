//! Min-sum SC kernels.

use crate::error::{PolarError, Result};

/// `sign(a b) min(|a|, |b|)`; a zero input counts as positive.
#[inline]
pub fn f_minsum(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Right-child LLR: `b + a` when the left estimate is 0, `b - a` otherwise.
#[inline]
pub fn g_llr(a: f64, b: f64, beta: u8) -> f64 {
    if beta == 0 {
        b + a
    } else {
        b - a
    }
}

/// 0 when `llr >= 0`, 1 otherwise.
#[inline]
pub fn hard_decision(llr: f64) -> u8 {
    u8::from(llr < 0.0)
}

pub fn combine(beta_l: &[u8], beta_r: &[u8]) -> Result<Vec<u8>> {
    if beta_l.len() != beta_r.len() {
        return Err(PolarError::LengthMismatch { got: beta_r.len(), expected: beta_l.len() });
    }
    Ok(beta_l.iter().zip(beta_r).map(|(l, r)| l ^ r).chain(beta_r.iter().copied()).collect())
}

/// Left-child LLRs of a node whose input is `alpha`.
#[inline]
pub(crate) fn f_layer(alpha: &[f64], out: &mut [f64]) {
    let (a, b) = alpha.split_at(out.len());
    for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
        *o = f_minsum(x, y);
    }
}

/// Right-child LLRs given the left child's estimate `beta_l`.
#[inline]
pub(crate) fn g_layer(alpha: &[f64], beta_l: &[u8], out: &mut [f64]) {
    let (a, b) = alpha.split_at(out.len());
    for (((o, &x), &y), &bl) in out.iter_mut().zip(a).zip(b).zip(beta_l) {
        *o = g_llr(x, y, bl);
    }
}

/// In-place combine of a node's `beta` span: first half ^= second half.
#[inline]
pub(crate) fn combine_in_place(beta: &mut [u8]) {
    let (l, r) = beta.split_at_mut(beta.len() / 2);
    for (x, &y) in l.iter_mut().zip(r.iter()) {
        *x ^= y;
    }
}
