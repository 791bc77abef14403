//! Polar-code codec and decoder-memory toolkit.
//!
//! The crate provides:
//!
//! * code construction (Gaussian-approximation density evolution or
//!   Bhattacharyya bounds) for BPSK-AWGN at a design SNR,
//! * the polar transform and the min-sum LLR kernels shared by all decoders,
//! * successive-cancellation (SC), CRC-aided successive-cancellation list
//!   (SCL) and partitioned SCL (PSCL) decoding,
//! * bit-exact memory-footprint models for SC/SCL/PSCL hardware decoders,
//! * a deterministic, parallel Monte-Carlo FER/BER simulation harness.
//!
//! Bits are plain `u8` values in `{0, 1}`; LLRs are `f64` with the convention
//! that a positive value favours bit 0. An LLR of exactly zero decodes to
//! bit 0 everywhere, so SC, SCL and PSCL agree bit-for-bit on every input.

pub mod channel;
pub mod codec;
pub mod construction;
pub mod crc;
pub mod decode;
pub mod memory;
pub mod sim;

use thiserror::Error;

/// Errors produced by code construction, layout and frame handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("blocklength {0} is not a power of two")]
    BlocklengthNotPowerOfTwo(usize),
    #[error("info count {k} out of range for blocklength {n}")]
    InfoCountOutOfRange { n: usize, k: usize },
    #[error("partition count {p} is not a power of two dividing {n}")]
    BadPartitionCount { n: usize, p: usize },
    #[error("expected {expected} CRC widths, got {got}")]
    CrcWidthCount { expected: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid CRC spec `{0}`")]
    InvalidCrcSpec(String),
    #[error("invalid bit value {0} (bits must be 0 or 1)")]
    InvalidBit(u8),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
