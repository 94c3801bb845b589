//! Polar codes with fast-SSC-flip decoding.
//!
//! The crate covers frozen-set construction, CRC-aided encoding, a BPSK/AWGN
//! channel, SC, SC-flip, fast-SSC and fast-SSC-flip decoders, analytic latency
//! models and a deterministic Monte-Carlo sweep driver.

pub mod channel;
pub mod code;
pub mod crc;
pub mod decoder;
pub mod encode;
pub mod error;
pub mod latency;
pub mod sim;
pub mod tree;

pub use code::{construct_frozen_set, DesignPoint, PolarCode};
pub use crc::CrcSpec;
pub use error::{PolarError, Result};
pub use tree::{DecoderTree, NodeConstraints, NodeKind};
