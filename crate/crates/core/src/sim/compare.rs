use std::path::Path;

use super::csv::load_csv;
use super::sweep::SweepRow;
use crate::error::{PolarError, Result};

pub const DEFAULT_TARGET_FER: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub target_fer: f64,
    pub baseline_ebn0_db: f64,
    pub candidate_ebn0_db: f64,
    /// Candidate minus baseline, in dB.
    pub gap_db: f64,
}

/// Eb/N0 at which the curve first crosses `target` going up in SNR,
/// interpolating linearly between `log10(FER)` values. Points with zero
/// errors are ignored.
pub fn ebn0_at_fer(rows: &[SweepRow], target: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.fer > 0.0).map(|r| (r.ebn0_db, r.fer)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lt = target.log10();
    pts.windows(2).find_map(|w| {
        let ((e0, f0), (e1, f1)) = (w[0], w[1]);
        if f0 == target {
            return Some(e0);
        }
        if !(f0 > target && f1 <= target) {
            return None;
        }
        let (l0, l1) = (f0.log10(), f1.log10());
        Some(e0 + (lt - l0) / (l1 - l0) * (e1 - e0))
    })
    .or_else(|| pts.last().filter(|p| p.1 == target).map(|p| p.0))
}

pub fn compare_rows(baseline: &[SweepRow], candidate: &[SweepRow], target: f64) -> Result<GapReport> {
    let at = |rows: &[SweepRow], curve: &str| {
        ebn0_at_fer(rows, target).ok_or_else(|| PolarError::FerOutOfRange { target, curve: curve.into() })
    };
    let b = at(baseline, "baseline")?;
    let c = at(candidate, "candidate")?;
    Ok(GapReport { target_fer: target, baseline_ebn0_db: b, candidate_ebn0_db: c, gap_db: c - b })
}

pub fn compare_runs(baseline_csv: impl AsRef<Path>, candidate_csv: impl AsRef<Path>, target: f64) -> Result<GapReport> {
    compare_rows(&load_csv(baseline_csv)?, &load_csv(candidate_csv)?, target)
}
