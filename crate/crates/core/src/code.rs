//! Polar code definitions and frozen-set construction.
//!
//! A code is fully described by its length `N = 2^n`, its number of
//! unfrozen (information) positions `k` and the frozen set. When a CRC is
//! used, the last `crc_bits` of the `k` information positions (in ascending
//! u-domain order) carry the CRC remainder.
//!
//! Construction uses the Gaussian approximation of density evolution over
//! a BPSK/AWGN channel. Frozen sets can also be loaded from a text file:
//!
//! ```text
//! N=8 k=5 crc=0
//! 0
//! 1
//! 4
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{PolarError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarCode {
    n_bits: usize,
    k_info: usize,
    crc_bits: usize,
    frozen: Vec<bool>,
    info_positions: Vec<usize>,
}

impl PolarCode {
    pub fn new(
        n_bits: usize,
        k_info: usize,
        frozen: impl IntoIterator<Item = usize>,
        crc_bits: usize,
    ) -> Result<Self> {
        if n_bits < 2 || !n_bits.is_power_of_two() {
            return Err(PolarError::NotPowerOfTwo(n_bits));
        }
        if k_info == 0 || k_info > n_bits {
            return Err(PolarError::InfoLengthOutOfRange { k: k_info, n: n_bits });
        }
        if crc_bits > 0 && k_info <= crc_bits {
            return Err(PolarError::CrcTooLong { crc: crc_bits, k: k_info });
        }
        let mut mask = vec![false; n_bits];
        let mut count = 0;
        for index in frozen {
            if index >= n_bits {
                return Err(PolarError::FrozenIndexOutOfRange { index, n: n_bits });
            }
            if mask[index] {
                return Err(PolarError::DuplicateFrozenIndex(index));
            }
            mask[index] = true;
            count += 1;
        }
        if count != n_bits - k_info {
            return Err(PolarError::FrozenCountMismatch { got: count, expected: n_bits - k_info });
        }
        let info_positions = (0..n_bits).filter(|&i| !mask[i]).collect();
        Ok(Self { n_bits, k_info, crc_bits, frozen: mask, info_positions })
    }

    /// Same frozen set with a different CRC split.
    pub fn with_crc_bits(self, crc_bits: usize) -> Result<Self> {
        let frozen = self.frozen_indices();
        Self::new(self.n_bits, self.k_info, frozen, crc_bits)
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    /// `n = log2(N)`.
    pub fn stages(&self) -> usize {
        self.n_bits.trailing_zeros() as usize
    }

    /// Number of unfrozen positions (payload + CRC).
    pub fn k_info(&self) -> usize {
        self.k_info
    }

    pub fn crc_bits(&self) -> usize {
        self.crc_bits
    }

    pub fn k_payload(&self) -> usize {
        self.k_info - self.crc_bits
    }

    pub fn rate(&self) -> f64 {
        self.k_info as f64 / self.n_bits as f64
    }

    pub fn payload_rate(&self) -> f64 {
        self.k_payload() as f64 / self.n_bits as f64
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen[index]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn frozen_indices(&self) -> Vec<usize> {
        (0..self.n_bits).filter(|&i| self.frozen[i]).collect()
    }

    /// Unfrozen u-domain positions in ascending order.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Location of the first information bit, `N` if there is none.
    pub fn first_info_index(&self) -> usize {
        self.info_positions.first().copied().unwrap_or(self.n_bits)
    }

    /// Text form accepted by [`load_frozen_set`].
    pub fn to_frozen_file_string(&self) -> String {
        let mut out = format!("N={} k={} crc={}\n", self.n_bits, self.k_info, self.crc_bits);
        for i in self.frozen_indices() {
            let _ = writeln!(out, "{i}");
        }
        out
    }
}

/// Channel point at which bit-channel reliabilities are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignPoint {
    /// Design Eb/N0 in dB, converted with the code rate `k/N`.
    EbN0Db(f64),
    /// Channel noise standard deviation of the BPSK/AWGN channel.
    Sigma(f64),
}

impl DesignPoint {
    fn sigma(self, rate: f64) -> f64 {
        match self {
            DesignPoint::EbN0Db(db) => crate::channel::sigma_from_ebn0(db, rate),
            DesignPoint::Sigma(s) => s,
        }
    }
}

/// Builds an `(N, k)` code freezing the `N - k` least reliable positions
/// under the Gaussian approximation at `design`.
pub fn construct_frozen_set(n_bits: usize, k_info: usize, design: DesignPoint) -> Result<PolarCode> {
    if n_bits < 2 || !n_bits.is_power_of_two() {
        return Err(PolarError::NotPowerOfTwo(n_bits));
    }
    if k_info == 0 || k_info >= n_bits {
        return Err(PolarError::InfoLengthOutOfRange { k: k_info, n: n_bits });
    }
    let sigma = design.sigma(k_info as f64 / n_bits as f64);
    let means = ga_llr_means(n_bits, sigma);
    let mut order: Vec<usize> = (0..n_bits).collect();
    // Least reliable first; lower index first among equals.
    order.sort_by(|&a, &b| means[a].total_cmp(&means[b]).then(a.cmp(&b)));
    PolarCode::new(n_bits, k_info, order.into_iter().take(n_bits - k_info), 0)
}

/// Mean LLR of every bit channel under the Gaussian approximation.
///
/// Index bits are consumed most-significant first: the MSB selects the
/// first (outermost) channel combining step, matching `x = u F^{(x)n}`.
pub fn ga_llr_means(n_bits: usize, sigma: f64) -> Vec<f64> {
    assert!(n_bits.is_power_of_two());
    let mut means = vec![2.0 / (sigma * sigma)];
    while means.len() < n_bits {
        let mut next = Vec::with_capacity(means.len() * 2);
        for &m in &means {
            next.push(ga_check_node(m));
            next.push(2.0 * m);
        }
        means = next;
    }
    means
}

// ln(phi(x)), three-piece approximation; phi(0) = 1 and phi is decreasing.
fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < 0.867861 {
        0.0564 * x * x - 0.4856 * x
    } else if x < 10.0 {
        -0.4527 * x.powf(0.86) + 0.0218
    } else {
        0.5 * (std::f64::consts::PI / x).ln() - x / 4.0 + (1.0 - 10.0 / (7.0 * x)).ln()
    }
}

fn ga_check_node(mean: f64) -> f64 {
    // 1 - (1 - phi)^2 = phi (2 - phi), kept in the log domain.
    let lp = ln_phi(mean);
    let target = lp + (2.0 - lp.exp()).ln();
    if target >= 0.0 {
        return 0.0;
    }
    // ln_phi is decreasing apart from a tiny seam at x = 10; bisection is robust to it.
    let mut lo = 0.0;
    let mut hi = mean.max(1.0);
    while ln_phi(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Parses the frozen-set text format from a string.
pub fn parse_frozen_set(text: &str, path: &Path) -> Result<PolarCode> {
    let perr = |line: usize, msg: String| PolarError::Parse { path: path.to_path_buf(), line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
    let (mut n, mut k, mut crc) = (None, None, None);
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| perr(hline, format!("malformed header field '{field}'")))?;
        let value: usize = value
            .parse()
            .map_err(|_| perr(hline, format!("bad value in header field '{field}'")))?;
        match key {
            "N" => n = Some(value),
            "k" => k = Some(value),
            "crc" => crc = Some(value),
            _ => return Err(perr(hline, format!("unknown header key '{key}'"))),
        }
    }
    let (Some(n), Some(k)) = (n, k) else {
        return Err(perr(hline, "header must be 'N=<int> k=<int> crc=<int>'".into()));
    };
    let crc = crc.unwrap_or(0);

    let mut frozen = Vec::new();
    for (lineno, line) in lines {
        let index: usize =
            line.parse().map_err(|_| perr(lineno, format!("malformed index '{line}'")))?;
        if index >= n {
            return Err(PolarError::FrozenIndexOutOfRange { index, n });
        }
        frozen.push(index);
    }
    PolarCode::new(n, k, frozen, crc)
}

pub fn load_frozen_set(path: impl AsRef<Path>) -> Result<PolarCode> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| PolarError::io(path, e))?;
    parse_frozen_set(&text, path)
}

pub fn save_frozen_set(code: &PolarCode, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, code.to_frozen_file_string()).map_err(|e| PolarError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<PolarCode> {
        parse_frozen_set(text, Path::new("test.frozen"))
    }

    #[test]
    fn length_two_freezes_index_zero() {
        for design in [DesignPoint::EbN0Db(-5.0), DesignPoint::EbN0Db(0.0), DesignPoint::EbN0Db(8.0)] {
            let code = construct_frozen_set(2, 1, design).unwrap();
            assert_eq!(code.frozen_indices(), vec![0]);
        }
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert_eq!(
            construct_frozen_set(12, 4, DesignPoint::EbN0Db(1.0)),
            Err(PolarError::NotPowerOfTwo(12))
        );
        assert!(construct_frozen_set(8, 0, DesignPoint::EbN0Db(1.0)).is_err());
        assert!(construct_frozen_set(8, 8, DesignPoint::EbN0Db(1.0)).is_err());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = construct_frozen_set(256, 100, DesignPoint::EbN0Db(2.0)).unwrap();
        let b = construct_frozen_set(256, 100, DesignPoint::EbN0Db(2.0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ga_means_respect_partial_order() {
        // Moving a 1 to a more significant bit never hurts.
        let means = ga_llr_means(64, 0.8);
        for i in 0..64usize {
            for s in 0..5 {
                if i >> s & 1 == 1 && i >> (s + 1) & 1 == 0 {
                    let j = i ^ (0b11 << s);
                    assert!(means[j] >= means[i], "{i} vs {j}");
                }
            }
        }
    }

    #[test]
    fn parses_toy_code() {
        let code = parse("N=8 k=5 crc=0\n0\n1\n4\n").unwrap();
        assert_eq!(code.frozen_indices(), vec![0, 1, 4]);
        assert_eq!(code.info_positions(), &[2, 3, 5, 6, 7]);
        assert_eq!(code.first_info_index(), 2);
    }

    #[test]
    fn parses_rate_one_code() {
        let code = parse("N=2 k=2 crc=0\n").unwrap();
        assert!(code.frozen_indices().is_empty());
    }

    #[test]
    fn rejects_out_of_range_index() {
        assert_eq!(
            parse("N=8 k=5 crc=0\n0\n1\n8\n"),
            Err(PolarError::FrozenIndexOutOfRange { index: 8, n: 8 })
        );
    }

    #[test]
    fn rejects_wrong_count_and_garbage() {
        assert!(matches!(
            parse("N=8 k=5 crc=0\n0\n1\n"),
            Err(PolarError::FrozenCountMismatch { got: 2, expected: 3 })
        ));
        assert!(matches!(parse("N=8 k=5 crc=0\n0\nx\n4\n"), Err(PolarError::Parse { line: 3, .. })));
        assert!(matches!(parse("N=8 k=5 crc=0\n0\n0\n4\n"), Err(PolarError::DuplicateFrozenIndex(0))));
        assert!(matches!(parse("N=8\n"), Err(PolarError::Parse { .. })));
    }

    #[test]
    fn crc_split_is_validated() {
        assert!(PolarCode::new(8, 4, [0, 1, 2, 4], 4).is_err());
        let code = PolarCode::new(8, 4, [0, 1, 2, 4], 3).unwrap();
        assert_eq!(code.k_payload(), 1);
    }

    #[test]
    fn file_round_trip() {
        let code = construct_frozen_set(64, 20, DesignPoint::EbN0Db(1.5)).unwrap().with_crc_bits(4).unwrap();
        assert_eq!(parse(&code.to_frozen_file_string()).unwrap(), code);
    }
}
