use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::code::{construct_frozen_set, load_frozen_set, DesignPoint, PolarCode};
use crate::crc::CrcSpec;
use crate::error::{PolarError, Result};
use crate::latency::HwParams;
use crate::tree::{NodeConstraints, NodeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderVariant {
    Sc,
    Scf,
    FastSsc,
    FastSscFlip,
}

impl DecoderVariant {
    pub const ALL: [DecoderVariant; 4] = [Self::Sc, Self::Scf, Self::FastSsc, Self::FastSscFlip];

    pub fn name(self) -> &'static str {
        match self {
            Self::Sc => "sc",
            Self::Scf => "scf",
            Self::FastSsc => "fast-ssc",
            Self::FastSscFlip => "fast-ssc-flip",
        }
    }

    pub fn flips(self) -> bool {
        matches!(self, Self::Scf | Self::FastSscFlip)
    }

    pub fn uses_tree(self) -> bool {
        matches!(self, Self::FastSsc | Self::FastSscFlip)
    }
}

impl fmt::Display for DecoderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderVariant {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| PolarError::Config(format!("unknown decoder variant '{s}'")))
    }
}

/// Where the frozen set comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeSource {
    /// GA construction at the given design Eb/N0 in dB.
    Constructed { design_ebn0_db: f64 },
    File(PathBuf),
}

/// Full description of a Monte-Carlo sweep. Every field can be set from a
/// `key = value` file or from the command line through [`SweepConfig::set`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_bits: usize,
    /// Unfrozen positions, CRC included unless `k_excludes_crc`.
    pub k: usize,
    pub k_excludes_crc: bool,
    pub source: CodeSource,
    pub variant: DecoderVariant,
    pub t_max: usize,
    pub s_factor: f64,
    pub constraints: NodeConstraints,
    pub crc: CrcSpec,
    pub ebn0_db: Vec<f64>,
    pub min_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    /// 0 selects the number of available cores.
    pub workers: usize,
    pub p_lanes: usize,
    pub q_lambda: usize,
    pub calibration: f64,
    pub dead_combines: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_bits: 512,
            k: 128,
            k_excludes_crc: false,
            source: CodeSource::Constructed { design_ebn0_db: DEFAULT_DESIGN_EBN0_DB },
            variant: DecoderVariant::FastSscFlip,
            t_max: 8,
            s_factor: 1.0,
            constraints: NodeConstraints::hardware(),
            crc: CrcSpec::ccitt16(),
            ebn0_db: vec![1.5, 2.0, 2.5, 3.0, 3.5],
            min_errors: 100,
            max_frames: 10_000_000,
            seed: 1,
            workers: 0,
            p_lanes: 64,
            q_lambda: 8,
            calibration: 1.0,
            dead_combines: false,
        }
    }
}

/// Design point of the default GA construction.
pub const DEFAULT_DESIGN_EBN0_DB: f64 = 1.0;

pub const CONFIG_KEYS: [&str; 23] = [
    "n",
    "k",
    "k_excludes_crc",
    "design_ebn0",
    "frozen_file",
    "variant",
    "t_max",
    "s_factor",
    "max_rep",
    "max_birep",
    "max_spc",
    "no_spc",
    "no_birep",
    "crc",
    "ebn0",
    "min_errors",
    "max_frames",
    "seed",
    "workers",
    "p_lanes",
    "q_lambda",
    "calibration",
    "dead_combines",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| PolarError::Config(format!("invalid value '{value}' for '{key}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "1" | "true" | "yes" => Ok(true),
        "0" | "false" | "no" => Ok(false),
        _ => Err(PolarError::Config(format!("invalid boolean '{value}' for '{key}'"))),
    }
}

/// Either a comma-separated list or `start:step:stop` (inclusive).
pub fn parse_grid(value: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    if parts.len() == 3 {
        let [start, step, stop]: [f64; 3] = [parse("ebn0", parts[0])?, parse("ebn0", parts[1])?, parse("ebn0", parts[2])?];
        if !(step > 0.0) || stop < start {
            return Err(PolarError::Config(format!("invalid grid '{value}'")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|i| start + i as f64 * step).collect());
    }
    value.split(',').map(|p| parse("ebn0", p.trim())).collect()
}

/// `ccitt16`, `none`, or `width:poly` with a hex or decimal polynomial
/// (top bit omitted, zero init, no reflection).
pub fn parse_crc(value: &str) -> Result<CrcSpec> {
    match value {
        "ccitt16" => Ok(CrcSpec::ccitt16()),
        "none" => Ok(CrcSpec::none()),
        _ => {
            let (w, p) = value
                .split_once(':')
                .ok_or_else(|| PolarError::InvalidCrc(format!("expected width:poly, got '{value}'")))?;
            let width: usize = parse("crc", w)?;
            let poly = match p.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => p.parse(),
            }
            .map_err(|_| PolarError::InvalidCrc(format!("invalid polynomial '{p}'")))?;
            CrcSpec::new(width, poly, 0, false, 0)
        }
    }
}

impl SweepConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "n" => self.n_bits = parse(key, value)?,
            "k" => self.k = parse(key, value)?,
            "k_excludes_crc" => self.k_excludes_crc = parse_bool(key, value)?,
            "design_ebn0" => self.source = CodeSource::Constructed { design_ebn0_db: parse(key, value)? },
            "frozen_file" => self.source = CodeSource::File(PathBuf::from(value)),
            "variant" => self.variant = value.parse()?,
            "t_max" => self.t_max = parse(key, value)?,
            "s_factor" => self.s_factor = parse(key, value)?,
            "max_rep" => self.constraints.max_rep = parse(key, value)?,
            "max_birep" => self.constraints.max_birep = parse(key, value)?,
            "max_spc" => self.constraints.max_spc = parse(key, value)?,
            "no_spc" => self.toggle(NodeKind::Spc, parse_bool(key, value)?),
            "no_birep" => self.toggle(NodeKind::Birep, parse_bool(key, value)?),
            "crc" => self.crc = parse_crc(value)?,
            "ebn0" => self.ebn0_db = parse_grid(value)?,
            "min_errors" => self.min_errors = parse::<f64>(key, value).map(|v| v as u64)?,
            "max_frames" => self.max_frames = parse::<f64>(key, value).map(|v| v as u64)?,
            "seed" => self.seed = parse(key, value)?,
            "workers" => self.workers = parse(key, value)?,
            "p_lanes" => self.p_lanes = parse(key, value)?,
            "q_lambda" => self.q_lambda = parse(key, value)?,
            "calibration" => self.calibration = parse(key, value)?,
            "dead_combines" => self.dead_combines = parse_bool(key, value)?,
            _ => return Err(PolarError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    fn toggle(&mut self, kind: NodeKind, disabled: bool) {
        if disabled {
            self.constraints.enabled.remove(kind);
        } else {
            self.constraints.enabled.insert(kind);
        }
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are ignored.
    pub fn apply_text(&mut self, text: &str, path: &Path) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| PolarError::Parse { path: path.to_path_buf(), line: i + 1, msg };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            self.set(key.trim(), value).map_err(|e| err(e.to_string()))?;
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| PolarError::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text, path)?;
        Ok(cfg)
    }

    pub fn hw(&self) -> HwParams {
        HwParams {
            p_lanes: self.p_lanes,
            q_lambda: self.q_lambda,
            t_max: self.t_max,
            calibration: self.calibration,
            dead_combines: self.dead_combines,
        }
    }

    /// Trials actually available to the configured variant.
    pub fn effective_t_max(&self) -> usize {
        if self.variant.flips() && !self.crc.is_none() {
            self.t_max
        } else {
            1
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ebn0_db.is_empty() {
            return Err(PolarError::Config("Eb/N0 grid is empty".into()));
        }
        if self.ebn0_db.iter().any(|v| !v.is_finite()) {
            return Err(PolarError::Config("Eb/N0 grid contains non-finite values".into()));
        }
        if self.min_errors == 0 {
            return Err(PolarError::Config("min_errors must be >= 1".into()));
        }
        if self.max_frames == 0 {
            return Err(PolarError::Config("max_frames must be >= 1".into()));
        }
        if self.t_max == 0 {
            return Err(PolarError::Config("t_max must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.s_factor) {
            return Err(PolarError::Config(format!("s_factor {} must lie in [0, 1]", self.s_factor)));
        }
        self.crc.validate()?;
        self.hw().validate()
    }

    /// Builds the code with `crc.width` of its unfrozen positions reserved for the CRC.
    pub fn build_code(&self) -> Result<PolarCode> {
        let code = match &self.source {
            CodeSource::File(path) => load_frozen_set(path)?,
            CodeSource::Constructed { design_ebn0_db } => {
                let k = if self.k_excludes_crc { self.k + self.crc.width } else { self.k };
                construct_frozen_set(self.n_bits, k, DesignPoint::EbN0Db(*design_ebn0_db))?
            }
        };
        code.with_crc_bits(self.crc.width)
    }
}
