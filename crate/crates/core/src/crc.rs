//! Bit-serial CRC over bit vectors.
//!
//! Bits are shifted in MSB-first, one `u8` per bit. The remainder is
//! appended MSB-first after the payload.

use crate::error::{PolarError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrcSpec {
    pub width: usize,
    /// Generator polynomial without the leading `x^width` term.
    pub poly: u64,
    pub init: u64,
    /// Reverse the remainder bit order before appending.
    pub reflect: bool,
    pub xor_out: u64,
}

impl Default for CrcSpec {
    fn default() -> Self {
        Self::ccitt16()
    }
}

impl CrcSpec {
    /// x^16 + x^12 + x^5 + 1, init 0, no reflection, no final XOR.
    pub const fn ccitt16() -> Self {
        Self { width: 16, poly: 0x1021, init: 0, reflect: false, xor_out: 0 }
    }

    pub const fn none() -> Self {
        Self { width: 0, poly: 0, init: 0, reflect: false, xor_out: 0 }
    }

    pub fn new(width: usize, poly: u64, init: u64, reflect: bool, xor_out: u64) -> Result<Self> {
        let spec = Self { width, poly, init, reflect, xor_out };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width > 63 {
            return Err(PolarError::InvalidCrc(format!("width {} exceeds 63", self.width)));
        }
        if self.width > 0 {
            let mask = self.mask();
            if self.poly & !mask != 0 || self.init & !mask != 0 || self.xor_out & !mask != 0 {
                return Err(PolarError::InvalidCrc(format!("parameters wider than {} bits", self.width)));
            }
            if self.poly & 1 == 0 {
                // Without the x^0 term the code does not detect every single-bit error.
                return Err(PolarError::InvalidCrc("polynomial must include the constant term".into()));
            }
        }
        Ok(())
    }

    pub fn is_none(&self) -> bool {
        self.width == 0
    }

    fn mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    /// CRC register value after processing `bits`.
    pub fn remainder(&self, bits: &[u8]) -> u64 {
        if self.width == 0 {
            return 0;
        }
        let top = self.width - 1;
        let mask = self.mask();
        let mut reg = self.init;
        for &b in bits {
            let feedback = ((reg >> top) & 1) ^ u64::from(b & 1);
            reg = (reg << 1) & mask;
            if feedback == 1 {
                reg ^= self.poly;
            }
        }
        let reg = if self.reflect { reg.reverse_bits() >> (64 - self.width) } else { reg };
        reg ^ self.xor_out
    }

    fn push_bits(&self, value: u64, out: &mut Vec<u8>) {
        out.extend((0..self.width).rev().map(|i| ((value >> i) & 1) as u8));
    }

    pub fn attach(&self, payload: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(payload.len() + self.width);
        out.extend_from_slice(payload);
        self.push_bits(self.remainder(payload), &mut out);
        out
    }

    /// Writes payload + remainder into `out`, which must have room for both.
    pub fn attach_into(&self, payload: &[u8], out: &mut [u8]) {
        let (head, tail) = out.split_at_mut(payload.len());
        head.copy_from_slice(payload);
        let rem = self.remainder(payload);
        for (i, t) in tail.iter_mut().take(self.width).enumerate() {
            *t = ((rem >> (self.width - 1 - i)) & 1) as u8;
        }
    }

    /// True iff the trailing `width` bits equal the CRC of the prefix.
    pub fn check(&self, block: &[u8]) -> bool {
        if block.len() < self.width {
            return false;
        }
        let (payload, tail) = block.split_at(block.len() - self.width);
        let expected = self.remainder(payload);
        tail.iter().enumerate().all(|(i, &b)| u64::from(b) == (expected >> (self.width - 1 - i)) & 1)
    }
}

pub fn crc_attach(payload: &[u8], spec: &CrcSpec) -> Vec<u8> {
    spec.attach(payload)
}

pub fn crc_check(block: &[u8], spec: &CrcSpec) -> bool {
    spec.check(block)
}
