//! Polar transform and non-systematic encoding. Bits are `u8` values in {0, 1}.

use crate::code::PolarCode;
use crate::error::{PolarError, Result};

/// In-place `v * F^{(x)n}` over GF(2). The transform is its own inverse.
pub fn polar_transform_in_place(v: &mut [u8]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in v.chunks_exact_mut(2 * half) {
            let (left, right) = block.split_at_mut(half);
            for (l, r) in left.iter_mut().zip(right.iter()) {
                *l ^= *r;
            }
        }
        half *= 2;
    }
}

pub fn polar_transform(v: &[u8]) -> Result<Vec<u8>> {
    if v.is_empty() || !v.len().is_power_of_two() {
        return Err(PolarError::NotPowerOfTwo(v.len()));
    }
    let mut out = v.to_vec();
    polar_transform_in_place(&mut out);
    Ok(out)
}

/// Places `info` on the unfrozen positions (ascending) of an otherwise zero `u`.
pub fn scatter_info(code: &PolarCode, info: &[u8], u: &mut [u8]) {
    u.fill(0);
    for (&pos, &bit) in code.info_positions().iter().zip(info) {
        u[pos] = bit;
    }
}

pub fn gather_info(code: &PolarCode, u: &[u8]) -> Vec<u8> {
    code.info_positions().iter().map(|&p| u[p]).collect()
}

pub fn encode(code: &PolarCode, info: &[u8]) -> Result<Vec<u8>> {
    if info.len() != code.k_info() {
        return Err(PolarError::LengthMismatch { got: info.len(), expected: code.k_info() });
    }
    let mut x = vec![0u8; code.n_bits()];
    scatter_info(code, info, &mut x);
    polar_transform_in_place(&mut x);
    Ok(x)
}
