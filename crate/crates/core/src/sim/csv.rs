use std::fmt::Write as _;
use std::path::Path;

use super::sweep::SweepRow;
use crate::error::{PolarError, Result};

pub const CSV_HEADER: &str = "EbN0dB,frames,frameErrors,bitErrors,FER,BER,avgTrials,perTrialCC,avgCC,wcCC";

/// Floats are written with 17 significant digits so that parsing restores them exactly.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{:.6},{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.ebn0_db, r.frames, r.frame_errors, r.bit_errors, r.fer, r.ber, r.avg_trials, r.per_trial_cc, r.avg_cc, r.wc_cc
        );
    }
    out
}

pub fn emit_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if rows.is_empty() {
        return Err(PolarError::Config("no rows to write".into()));
    }
    std::fs::write(path, format_csv(rows)).map_err(|e| PolarError::io(path, e))
}

pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<SweepRow>> {
    let perr = |line: usize, msg: String| PolarError::Parse { path: path.to_path_buf(), line, msg };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(perr(1, format!("expected header '{CSV_HEADER}'"))),
    }
    lines
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 10 {
                return Err(perr(i + 1, format!("expected 10 fields, found {}", f.len())));
            }
            let real = |j: usize| f[j].parse::<f64>().map_err(|_| perr(i + 1, format!("bad number '{}'", f[j])));
            let int = |j: usize| f[j].parse::<u64>().map_err(|_| perr(i + 1, format!("bad integer '{}'", f[j])));
            Ok(SweepRow {
                ebn0_db: real(0)?,
                frames: int(1)?,
                frame_errors: int(2)?,
                bit_errors: int(3)?,
                fer: real(4)?,
                ber: real(5)?,
                avg_trials: real(6)?,
                per_trial_cc: real(7)?,
                avg_cc: real(8)?,
                wc_cc: real(9)?,
            })
        })
        .collect()
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Vec<SweepRow>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| PolarError::io(path, e))?;
    parse_csv(&text, path)
}
