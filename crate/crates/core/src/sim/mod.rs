//! Monte-Carlo FER sweeps, CSV output and curve comparison.

mod compare;
mod config;
mod csv;
mod sweep;

pub use compare::{compare_rows, compare_runs, ebn0_at_fer, GapReport, DEFAULT_TARGET_FER};
pub use config::{parse_crc, parse_grid, CodeSource, DecoderVariant, SweepConfig, CONFIG_KEYS, DEFAULT_DESIGN_EBN0_DB};
pub use csv::{emit_csv, format_csv, load_csv, parse_csv, CSV_HEADER};
pub use sweep::{run_sweep, simulate_frames, AnyDecoder, FrameOutcome, SweepContext, SweepRow};
