//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The file is valid JPEG but outside the supported subset
    /// (progressive, arithmetic-coded, multi-scan, 12-bit, ...).
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// Broken marker framing, an undecodable VLC prefix, or a scan that
    /// ends in the middle of a symbol.
    #[error("malformed stream: {0}")]
    MalformedStream(String),

    /// A DHT code-length vector that violates canonical Huffman rules,
    /// or whose counts do not match the value list.
    #[error("invalid code-length counts: {0}")]
    InvalidCounts(String),

    /// An RSV (or one of its duplicate slots) has no code in the
    /// assignment used for encoding.
    #[error("no code for RSV {rsv:#04x} (slot selector {selector})")]
    MissingCode { rsv: u8, selector: u8 },

    /// No single histogram bin is frequent enough to hold the payload.
    #[error("no single histogram bin can carry {payload_bits} bits")]
    NoSinglePeak { payload_bits: u64 },

    /// The feasible solution space is empty for the requested payload.
    #[error("insufficient capacity: need {required} bits, at most {available} available")]
    InsufficientCapacity { required: u64, available: u64 },

    /// The input Huffman table already maps one RSV to several codes, so
    /// reversible embedding cannot be guaranteed.
    #[error("input Huffman table already contains duplicate RSVs")]
    DuplicateRsvInput,

    /// A duplicate-RSV group in a marked table does not describe a valid
    /// mapping set.
    #[error("malformed VLC mapping: {0}")]
    MalformedMapping(String),

    /// The embedded bitstring ends before the length header or the
    /// announced payload is complete.
    #[error("embedded stream ends early: {0}")]
    HeaderOverrun(String),
}
